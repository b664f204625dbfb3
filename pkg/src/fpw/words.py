"""Free-group words over a finite alphabet.

Words are tuples of signed letters.  Every public operation returns words in
freely reduced form; raw (unreduced) letter sequences appear only transiently
at parse boundaries, and ``free_reduce`` normalises those.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

# characters that would collide with the word / presentation / map grammars
_FORBIDDEN_CHARS = set("^,|<>=")


def _valid_name(name: str) -> bool:
    if not name or not name.isascii():
        return False
    return not any(c.isspace() or c in _FORBIDDEN_CHARS for c in name)


@dataclass(frozen=True)
class Generator:
    """A named generator.

    Names are nonempty ASCII without whitespace or any of ``^ , | < > =``.
    """

    name: str

    def __post_init__(self):
        if not _valid_name(self.name):
            raise ValueError(f"invalid generator name: {self.name!r}")

    def __repr__(self):
        return f"Generator({self.name!r})"


class Letter(NamedTuple):
    gen: Generator
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)


@dataclass(frozen=True)
class Alphabet:
    """An ordered, duplicate-free, nonempty tuple of generators."""

    generators: tuple[Generator, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("alphabet must contain at least one generator")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names: {names}")

    @classmethod
    def of(cls, *names: str) -> "Alphabet":
        return cls(tuple(Generator(n) for n in names))

    @cached_property
    def _by_name(self) -> dict[str, Generator]:
        return {g.name: g for g in self.generators}

    @cached_property
    def ordered_letters(self) -> tuple[Letter, ...]:
        """Letters in declaration order, each generator followed by its inverse."""
        out = []
        for g in self.generators:
            out.append(Letter(g, 1))
            out.append(Letter(g, -1))
        return tuple(out)

    @cached_property
    def _letter_rank(self) -> dict[Letter, int]:
        return {let: i for i, let in enumerate(self.ordered_letters)}

    def gen(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise ValueError(f"unknown generator: {name!r}") from None

    def letter_rank(self, letter: Letter) -> int:
        return self._letter_rank[letter]

    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def word(self, text: str) -> "Word":
        return parse_word(self, text)

    def empty_word(self) -> "Word":
        return Word(self, ())

    def gen_word(self, name: str) -> "Word":
        return Word(self, (Letter(self.gen(name), 1),))

    def __contains__(self, gen: Generator) -> bool:
        return self._by_name.get(gen.name) == gen

    def __len__(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class Word:
    """A word over a fixed alphabet, stored freely reduced.

    Construction validates every letter and reduces, so any ``Word`` in hand
    is in normal form; raw letter sequences exist only transiently inside
    parsers and constructors.
    """

    alphabet: Alphabet
    letters: tuple[Letter, ...]

    def __post_init__(self):
        for let in self.letters:
            if let.sign not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {let.sign}")
            if let.gen not in self.alphabet:
                raise ValueError(f"letter {let.gen.name!r} is not in the alphabet")
        object.__setattr__(self, "letters", _reduce(self.letters))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def shortlex_key(self) -> tuple:
        rank = self.alphabet.letter_rank
        return (len(self.letters), tuple(rank(let) for let in self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return invert(self) ** (-k)
        out = Word(self.alphabet, ())
        for _ in range(k):
            out = concat(out, self)
        return out

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def _reduce(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for let in letters:
        if out and out[-1] == let.inverse():
            out.pop()
        else:
            out.append(let)
    return tuple(out)


def free_reduce(w: Word) -> Word:
    """Return the unique freely reduced form of ``w``."""
    return Word(w.alphabet, w.letters)


def invert(w: Word) -> Word:
    return Word(w.alphabet, tuple(let.inverse() for let in reversed(w.letters)))


def concat(u: Word, v: Word) -> Word:
    """Concatenate two words over the same alphabet and reduce."""
    if u.alphabet != v.alphabet:
        raise ValueError("alphabet mismatch")
    return Word(u.alphabet, u.letters + v.letters)


def commutator(u: Word, v: Word) -> Word:
    """Return the reduced commutator u v u^-1 v^-1."""
    if u.alphabet != v.alphabet:
        raise ValueError("alphabet mismatch")
    return concat(concat(u, v), concat(invert(u), invert(v)))


class WordParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def parse_word(alphabet: Alphabet, text: str, *, offset: int = 0) -> Word:
    """Parse whitespace-separated letters ``name`` or ``name^k`` (k nonzero).

    The empty string denotes the empty word.  ``offset`` shifts reported error
    positions, for callers embedding word syntax in a larger grammar.
    """
    letters: list[Letter] = []
    for tok in re.finditer(r"\S+", text):
        token, pos = tok.group(), offset + tok.start()
        if "^" in token:
            name, _, exp = token.partition("^")
            try:
                k = int(exp)
            except ValueError:
                raise WordParseError(f"bad exponent {exp!r}", pos) from None
            if k == 0:
                raise WordParseError("zero exponent", pos)
        else:
            name, k = token, 1
        try:
            gen = alphabet.gen(name)
        except ValueError:
            raise WordParseError(f"unknown generator {name!r}", pos) from None
        sign = 1 if k > 0 else -1
        letters.extend([Letter(gen, sign)] * abs(k))
    return Word(alphabet, tuple(letters))


def format_word(w: Word) -> str:
    """Render a word as run-grouped text; the empty word renders as ''."""
    parts: list[str] = []
    i, letters = 0, w.letters
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        exp = (j - i) * letters[i].sign
        parts.append(letters[i].gen.name if exp == 1 else f"{letters[i].gen.name}^{exp}")
        i = j
    return " ".join(parts)


def shortlex_stream(alphabet: Alphabet) -> Iterator[Word]:
    """Yield every reduced word over the alphabet exactly once, in shortlex order.

    The letter order is the alphabet's declaration order with each generator
    immediately followed by its inverse.  Words come out sorted by length,
    ties broken lexicographically, so the stream is reproducible byte for
    byte.  Memory grows with the current word length.
    """
    letters = alphabet.ordered_letters
    level: list[tuple[Letter, ...]] = [()]
    while True:
        for seq in level:
            yield Word(alphabet, seq)
        nxt = []
        for seq in level:
            last = seq[-1] if seq else None
            for let in letters:
                if last is not None and let == last.inverse():
                    continue
                nxt.append(seq + (let,))
        level = nxt


@dataclass(frozen=True)
class GeneratorMap:
    """A map sending each generator of ``domain`` to a word over ``codomain``.

    Images are stored in the domain's declaration order.  Text syntax is
    comma-separated ``gen=word`` clauses, e.g. ``s=s,t=t^2``.
    """

    domain: Alphabet
    codomain: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != len(self.domain.generators):
            raise ValueError(
                f"expected {len(self.domain.generators)} images, got {len(self.images)}"
            )
        for img in self.images:
            if img.alphabet != self.codomain:
                raise ValueError("image word is not over the codomain alphabet")

    @cached_property
    def _img_by_gen(self) -> dict[Generator, Word]:
        return dict(zip(self.domain.generators, self.images))

    def image(self, gen: Generator) -> Word:
        try:
            return self._img_by_gen[gen]
        except KeyError:
            raise ValueError(f"unmapped generator: {gen.name!r}") from None

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "GeneratorMap":
        return cls(alphabet, alphabet, tuple(alphabet.gen_word(g.name) for g in alphabet.generators))

    @classmethod
    def parse(cls, domain: Alphabet, codomain: Alphabet, text: str) -> "GeneratorMap":
        images: dict[str, Word] = {}
        for clause in text.split(","):
            name, eq, rhs = clause.partition("=")
            if not eq:
                raise ValueError(f"expected gen=word, got {clause!r}")
            name = name.strip()
            if name in images:
                raise ValueError(f"duplicate image for generator {name!r}")
            domain.gen(name)  # raises on unknown generator
            images[name] = parse_word(codomain, rhs)
        missing = [g.name for g in domain.generators if g.name not in images]
        if missing:
            raise ValueError(f"missing images for generators: {missing}")
        return cls(domain, codomain, tuple(images[g.name] for g in domain.generators))

    def format(self) -> str:
        return ",".join(
            f"{g.name}={format_word(img)}" for g, img in zip(self.domain.generators, self.images)
        )

    def then(self, other: "GeneratorMap") -> "GeneratorMap":
        """Compose: apply this map, then ``other`` (domain -> other.codomain)."""
        return GeneratorMap(
            self.domain, other.codomain, tuple(substitute(img, other) for img in self.images)
        )


def substitute(w: Word, m: GeneratorMap) -> Word:
    """Replace every letter of ``w`` by its image under ``m`` and reduce."""
    if w.alphabet != m.domain:
        raise ValueError("word alphabet does not match map domain (unmapped generator)")
    pieces: list[Letter] = []
    for let in w.letters:
        img = m.image(let.gen)
        pieces.extend(img.letters if let.sign == 1 else invert(img).letters)
    return Word(m.codomain, _reduce(tuple(pieces)))
