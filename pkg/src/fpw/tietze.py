"""Certificate-checked Tietze transformations on finite presentations.

Each move either carries enough evidence to validate immediately or is
rejected; ``apply_move`` never guesses.  Adding a relator requires a
triviality certificate for it; removing one requires a certificate deriving
it from the relators that remain.  Generator moves are structural and need
no certificate.  ``check_move`` additionally semi-decides certificate-free
relator moves by searching the certificate stream under a budget.

Applied sequences produce a ``MoveLog``, a hash chain over canonical
serializations of the moves and the intermediate presentations, so a log can
be re-verified without re-running the searches that produced it.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Sequence, Union

from .presentations import (
    FinitePresentation,
    ProvedTrivial,
    TrivialityCertificate,
    certificate_word,
    semidecide_trivial,
)
from .words import Alphabet, Generator, GeneratorMap, Word, concat, format_word, invert, parse_word, substitute


class TietzeError(Exception):
    """A rejected move.  ``step`` is set when raised from ``apply_sequence``."""

    def __init__(self, message: str, step: int | None = None):
        self.message = message
        self.step = step
        prefix = f"move {step}: " if step is not None else ""
        super().__init__(prefix + message)


class InvalidCertificate(TietzeError):
    pass


class GeneratorNameClash(TietzeError):
    pass


class DefiningRelatorNotFound(TietzeError):
    pass


class IndexOutOfRange(TietzeError):
    pass


@dataclass(frozen=True)
class AddRelator:
    word: Word
    certificate: TrivialityCertificate | None = None


@dataclass(frozen=True)
class RemoveRelator:
    index: int
    certificate: TrivialityCertificate | None = None


@dataclass(frozen=True)
class AddGenerator:
    name: str
    definition: Word


@dataclass(frozen=True)
class RemoveGenerator:
    name: str
    index: int


TietzeMove = Union[AddRelator, RemoveRelator, AddGenerator, RemoveGenerator]


def _certificate_error(
    pres: FinitePresentation, cert: TrivialityCertificate, word: Word
) -> str | None:
    """Why the certificate fails to derive ``word``, or None if it succeeds."""
    try:
        derived = certificate_word(pres, cert)
    except ValueError as e:
        return str(e)
    if derived != word:
        return (
            f"certificate derives '{format_word(derived)}', "
            f"not '{format_word(word)}'"
        )
    return None


def _removed(pres: FinitePresentation, index: int) -> FinitePresentation:
    rels = pres.relators[:index] + pres.relators[index + 1 :]
    return FinitePresentation(pres.generators, rels)


def _lift(word: Word, alphabet: Alphabet) -> Word:
    """The same letters read over a different alphabet containing them."""
    return Word(alphabet, word.letters)


def apply_move(pres: FinitePresentation, move: TietzeMove) -> FinitePresentation:
    """Apply one move, validating its evidence; raises TietzeError subclasses."""
    if isinstance(move, AddRelator):
        if move.word.alphabet != pres.generators:
            raise InvalidCertificate("relator is not a word over the presentation's generators")
        if move.certificate is None:
            raise InvalidCertificate("adding a relator requires a triviality certificate")
        reason = _certificate_error(pres, move.certificate, move.word)
        if reason is not None:
            raise InvalidCertificate(reason)
        return FinitePresentation(pres.generators, pres.relators + (move.word,))

    if isinstance(move, RemoveRelator):
        if not 0 <= move.index < len(pres.relators):
            raise IndexOutOfRange(
                f"relator index {move.index} out of range for {len(pres.relators)} relators"
            )
        if move.certificate is None:
            raise InvalidCertificate("removing a relator requires a derivation certificate")
        remaining = _removed(pres, move.index)
        reason = _certificate_error(remaining, move.certificate, pres.relators[move.index])
        if reason is not None:
            raise InvalidCertificate(reason)
        return remaining

    if isinstance(move, AddGenerator):
        if move.name in pres.generators.names():
            raise GeneratorNameClash(f"generator '{move.name}' already present")
        if move.definition.alphabet != pres.generators:
            raise InvalidCertificate("definition is not a word over the existing generators")
        new_alpha = Alphabet(pres.generators.generators + (Generator(move.name),))
        defining = concat(new_alpha.gen_word(move.name), invert(_lift(move.definition, new_alpha)))
        relators = tuple(_lift(r, new_alpha) for r in pres.relators) + (defining,)
        return FinitePresentation(new_alpha, relators)

    if isinstance(move, RemoveGenerator):
        if move.name not in pres.generators.names():
            raise DefiningRelatorNotFound(f"presentation has no generator '{move.name}'")
        if not 0 <= move.index < len(pres.relators):
            raise IndexOutOfRange(
                f"relator index {move.index} out of range for {len(pres.relators)} relators"
            )
        rel = pres.relators[move.index]
        if not rel.letters or rel.letters[0] != (Generator(move.name), 1):
            raise DefiningRelatorNotFound(
                f"relator {move.index} does not start with '{move.name}'"
            )
        tail = Word(pres.generators, rel.letters[1:])
        if any(letter.gen.name == move.name for letter in tail.letters):
            raise DefiningRelatorNotFound(
                f"relator {move.index} uses '{move.name}' outside its leading letter"
            )
        new_alpha = Alphabet(
            tuple(g for g in pres.generators.generators if g.name != move.name)
        )
        definition = invert(_lift(tail, new_alpha))
        images = []
        for g in pres.generators.generators:
            images.append(definition if g.name == move.name else new_alpha.gen_word(g.name))
        down = GeneratorMap(pres.generators, new_alpha, tuple(images))
        relators = tuple(
            substitute(r, down) for i, r in enumerate(pres.relators) if i != move.index
        )
        return FinitePresentation(new_alpha, relators)

    raise TypeError(f"not a Tietze move: {move!r}")


@dataclass(frozen=True)
class MoveLogEntry:
    """One applied move with hashes of the presentations on either side."""

    move_json: str
    before_hash: str
    after_hash: str


@dataclass(frozen=True)
class MoveLog:
    entries: tuple[MoveLogEntry, ...]

    @property
    def final_hash(self) -> str | None:
        return self.entries[-1].after_hash if self.entries else None

    def verify_chain(self) -> bool:
        """Each step must pick up exactly where the previous one left off."""
        return all(
            a.after_hash == b.before_hash for a, b in zip(self.entries, self.entries[1:])
        )

    def to_json(self) -> dict:
        return {
            "entries": [
                {
                    "move": json.loads(e.move_json),
                    "before": e.before_hash,
                    "after": e.after_hash,
                }
                for e in self.entries
            ],
        }


def presentation_hash(pres: FinitePresentation) -> str:
    return hashlib.sha256(pres.canonical_text().encode()).hexdigest()


def move_to_json(move: TietzeMove) -> dict:
    if isinstance(move, AddRelator):
        cert = None if move.certificate is None else move.certificate.to_json()
        return {"op": "add_rel", "word": format_word(move.word), "cert": cert}
    if isinstance(move, RemoveRelator):
        cert = None if move.certificate is None else move.certificate.to_json()
        return {"op": "rem_rel", "index": move.index, "cert": cert}
    if isinstance(move, AddGenerator):
        return {"op": "add_gen", "name": move.name, "definition": format_word(move.definition)}
    if isinstance(move, RemoveGenerator):
        return {"op": "rem_gen", "name": move.name, "index": move.index}
    raise TypeError(f"not a Tietze move: {move!r}")


def parse_move(pres: FinitePresentation, data: dict) -> TietzeMove:
    """Decode one move against the presentation it will apply to."""
    op = data.get("op")
    if op == "add_rel":
        word = parse_word(pres.generators, data["word"])
        cert = data.get("cert")
        certificate = None if cert is None else TrivialityCertificate.from_json(pres.generators, cert)
        return AddRelator(word, certificate)
    if op == "rem_rel":
        cert = data.get("cert")
        certificate = None if cert is None else TrivialityCertificate.from_json(pres.generators, cert)
        return RemoveRelator(int(data["index"]), certificate)
    if op == "add_gen":
        return AddGenerator(data["name"], parse_word(pres.generators, data["definition"]))
    if op == "rem_gen":
        return RemoveGenerator(data["name"], int(data["index"]))
    raise ValueError(f"unknown move op: {op!r}")


def parse_sequence(pres: FinitePresentation, data: Sequence[dict]) -> list[TietzeMove]:
    """Decode a move list, threading each move's effect so later moves parse
    against the presentation they will actually see."""
    current = pres
    moves: list[TietzeMove] = []
    for i, item in enumerate(data):
        move = parse_move(current, item)
        moves.append(move)
        try:
            current = apply_move(current, move)
        except TietzeError as e:
            raise type(e)(e.message, step=i) from None
    return moves


def _canonical_move_json(move: TietzeMove) -> str:
    return json.dumps(move_to_json(move), sort_keys=True, separators=(",", ":"))


def apply_sequence(
    pres: FinitePresentation, moves: Sequence[TietzeMove]
) -> tuple[FinitePresentation, MoveLog]:
    """Apply moves in order, building the hash chain; the first failure is
    re-raised with its step index attached."""
    current = pres
    before = presentation_hash(pres)
    entries: list[MoveLogEntry] = []
    for i, move in enumerate(moves):
        try:
            current = apply_move(current, move)
        except TietzeError as e:
            raise type(e)(e.message, step=i) from None
        after = presentation_hash(current)
        entries.append(MoveLogEntry(_canonical_move_json(move), before, after))
        before = after
    return current, MoveLog(tuple(entries))


@dataclass(frozen=True)
class Valid:
    certificate: TrivialityCertificate | None


@dataclass(frozen=True)
class Invalid:
    reason: str


@dataclass(frozen=True)
class Unverifiable:
    budget: int


def check_move(
    pres: FinitePresentation, move: TietzeMove, budget: int
) -> Valid | Invalid | Unverifiable:
    """Decide a move's validity, searching for missing relator certificates.

    Moves carrying certificates validate or fail immediately.  A
    certificate-free AddRelator or RemoveRelator triggers a certificate-stream
    search capped at ``budget`` emissions; success returns Valid with the
    certificate found, and running out of budget returns Unverifiable rather
    than a verdict.
    """
    if isinstance(move, AddRelator):
        if move.word.alphabet != pres.generators:
            return Invalid("relator is not a word over the presentation's generators")
        if move.certificate is not None:
            reason = _certificate_error(pres, move.certificate, move.word)
            return Valid(move.certificate) if reason is None else Invalid(reason)
        outcome = semidecide_trivial(pres, move.word, budget)
        if isinstance(outcome, ProvedTrivial):
            return Valid(outcome.certificate)
        return Unverifiable(budget)

    if isinstance(move, RemoveRelator):
        if not 0 <= move.index < len(pres.relators):
            return Invalid(
                f"relator index {move.index} out of range for {len(pres.relators)} relators"
            )
        remaining = _removed(pres, move.index)
        target = pres.relators[move.index]
        if move.certificate is not None:
            reason = _certificate_error(remaining, move.certificate, target)
            return Valid(move.certificate) if reason is None else Invalid(reason)
        outcome = semidecide_trivial(remaining, target, budget)
        if isinstance(outcome, ProvedTrivial):
            return Valid(outcome.certificate)
        return Unverifiable(budget)

    try:
        apply_move(pres, move)
    except TietzeError as e:
        return Invalid(e.message)
    return Valid(None)
