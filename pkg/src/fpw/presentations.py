"""Finite and recursive group presentations.

Provides the presentation grammar, triviality certificates with a fair
deterministic enumeration of all certificate words (hence a semi-decision
procedure for the word problem of any presented group), and abelianization
invariants via an exact integer Smith normal form.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple

from .words import (
    Alphabet,
    Letter,
    Word,
    WordParseError,
    format_word,
    free_reduce,
    invert,
    parse_word,
)


@dataclass(frozen=True)
class FinitePresentation:
    """A finite presentation: an alphabet plus a finite tuple of relators.

    Relators are stored freely reduced, in the order given.  The empty relator
    is permitted in storage (it presents nothing) but the parser drops it.
    """

    generators: Alphabet
    relators: tuple[Word, ...]

    def __post_init__(self):
        reduced = []
        for r in self.relators:
            if r.alphabet != self.generators:
                raise ValueError("relator is not a word over the presentation's generators")
            reduced.append(free_reduce(r))
        object.__setattr__(self, "relators", tuple(reduced))

    def format(self) -> str:
        gens = ", ".join(self.generators.names())
        rels = ", ".join(format_word(r) for r in self.relators)
        if not rels:
            return f"< {gens} | >"
        return f"< {gens} | {rels} >"

    def canonical_text(self) -> str:
        """Serialization with relators sorted in shortlex order (for hashing)."""
        gens = ", ".join(self.generators.names())
        rels = ", ".join(
            format_word(r) for r in sorted(self.relators, key=lambda w: w.shortlex_key())
        )
        if not rels:
            return f"< {gens} | >"
        return f"< {gens} | {rels} >"

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class RecursivePresentation:
    """A presentation whose relators arrive from a pull-based stream.

    ``relator_source`` returns a fresh iterator of relator words each time it
    is called.  The stream may repeat words and may be infinite; iterator
    exhaustion is the explicit "no more relators available" signal, which is
    how finite relator lists embed as a degenerate case.
    """

    generators: Alphabet
    relator_source: Callable[[], Iterator[Word]]

    def relator_stream(self) -> Iterator[Word]:
        return self.relator_source()

    @classmethod
    def from_finite(cls, pres: FinitePresentation) -> "RecursivePresentation":
        return cls(pres.generators, lambda: iter(pres.relators))


Presentation = FinitePresentation | RecursivePresentation


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def parse_presentation(text: str) -> FinitePresentation:
    """Parse ``< gens | relators >``.

    Generators are comma-separated names.  Relators are comma-separated, each
    either a word or an equation ``u = v`` (stored as the relator u v^-1).
    Empty relator clauses and relators that reduce to the empty word are
    dropped.
    """
    lt = text.find("<")
    if lt < 0 or text[:lt].strip():
        raise PresentationSyntaxError("expected '<'", 0)
    bar = text.find("|", lt)
    if bar < 0:
        raise PresentationSyntaxError("expected '|'", len(text))
    gt = text.rfind(">")
    if gt < bar:
        raise PresentationSyntaxError("expected '>'", len(text))
    if text[gt + 1 :].strip():
        raise PresentationSyntaxError("unexpected text after '>'", gt + 1)

    names: list[str] = []
    pos = lt + 1
    for chunk in text[lt + 1 : bar].split(","):
        name = chunk.strip()
        if not name:
            raise PresentationSyntaxError("empty generator name", pos)
        if name in names:
            raise PresentationSyntaxError(f"duplicate generator {name!r}", pos)
        names.append(name)
        pos += len(chunk) + 1
    try:
        alphabet = Alphabet.of(*names)
    except ValueError as e:
        raise PresentationSyntaxError(str(e), lt + 1) from None

    relators: list[Word] = []
    pos = bar + 1
    for chunk in text[bar + 1 : gt].split(","):
        if chunk.strip():
            sides = chunk.split("=")
            if len(sides) > 2:
                raise PresentationSyntaxError("more than one '=' in relator", pos)
            try:
                if len(sides) == 1:
                    rel = parse_word(alphabet, sides[0], offset=pos)
                else:
                    u = parse_word(alphabet, sides[0], offset=pos)
                    v = parse_word(alphabet, sides[1], offset=pos + len(sides[0]) + 1)
                    rel = u * invert(v)
            except WordParseError as e:
                raise PresentationSyntaxError(str(e).rsplit(" at position", 1)[0], e.position) from None
            if not rel.is_identity:
                relators.append(rel)
        pos += len(chunk) + 1
    return FinitePresentation(alphabet, tuple(relators))


# --------------------------------------------------------------------------
# triviality certificates


EMPTY_RELATOR_INDEX = -1
"""Sentinel relator index meaning the empty relator.

Certificate factors may draw from the relator list or from the empty word;
empty-relator factors are accepted by the checker (they evaluate to the
identity) but never generated by the enumerator, since they add nothing a
shorter certificate does not already prove.
"""


class CertFactor(NamedTuple):
    conjugator: Word
    relator_index: int
    sign: int


@dataclass(frozen=True)
class TrivialityCertificate:
    """A product of conjugated relators: prod_i  c_i r_{j_i}^{e_i} c_i^-1.

    A word equals such a product (after free reduction) exactly when it is
    trivial in the presented group, so a certificate is checkable evidence of
    triviality.  JSON form: list of {"conj": word, "rel": index, "sign": +-1},
    where rel may be EMPTY_RELATOR_INDEX (-1) for the empty relator.
    """

    factors: tuple[CertFactor, ...]

    def __post_init__(self):
        for f in self.factors:
            if f.sign not in (1, -1):
                raise ValueError(f"certificate sign must be +1 or -1, got {f.sign}")
            if f.relator_index < EMPTY_RELATOR_INDEX:
                raise ValueError(f"negative relator index: {f.relator_index}")

    def to_json(self) -> list[dict]:
        return [
            {"conj": format_word(f.conjugator), "rel": f.relator_index, "sign": f.sign}
            for f in self.factors
        ]

    @classmethod
    def from_json(cls, alphabet: Alphabet, data: list[dict]) -> "TrivialityCertificate":
        factors = []
        for item in data:
            factors.append(
                CertFactor(parse_word(alphabet, item["conj"]), int(item["rel"]), int(item["sign"]))
            )
        return cls(tuple(factors))

    def __str__(self) -> str:
        return json.dumps(self.to_json())


class _RelatorPool:
    """Uniform indexed access to a presentation's relators.

    For a recursive presentation the pool is the prefix pulled so far, kept
    exactly as emitted (duplicates and empty words included) so that
    certificate indices are reproducible.
    """

    def __init__(self, pres: Presentation):
        if isinstance(pres, FinitePresentation):
            self._pool = list(pres.relators)
            self._src: Iterator[Word] | None = None
        else:
            self._pool = []
            self._src = pres.relator_stream()
        self._inverses: list[Word] = []

    def ensure(self, k: int) -> None:
        """Pull until the pool holds ``k`` relators or the source is exhausted."""
        while self._src is not None and len(self._pool) < k:
            try:
                self._pool.append(free_reduce(next(self._src)))
            except StopIteration:
                self._src = None

    @property
    def count(self) -> int:
        return len(self._pool)

    @property
    def exhausted(self) -> bool:
        return self._src is None

    def relator(self, i: int) -> Word:
        return self._pool[i]

    def inverse(self, i: int) -> Word:
        while len(self._inverses) <= i:
            self._inverses.append(invert(self._pool[len(self._inverses)]))
        return self._inverses[i]


def certificate_word(pres: Presentation, cert: TrivialityCertificate) -> Word:
    """Evaluate a certificate to the reduced word it proves trivial."""
    pool = _RelatorPool(pres)
    if cert.factors:
        pool.ensure(max(f.relator_index for f in cert.factors) + 1)
    out = pres.generators.empty_word()
    for c, i, e in cert.factors:
        if c.alphabet != pres.generators:
            raise ValueError("conjugator is not a word over the presentation's generators")
        if i == EMPTY_RELATOR_INDEX:
            continue  # c . empty . c^-1 contributes nothing
        if i >= pool.count:
            raise ValueError(f"relator index {i} out of range")
        r = pool.relator(i) if e == 1 else pool.inverse(i)
        out = out * c * r * invert(c)
    return out


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` nonnegative ints summing to ``total``, lex ascending."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


class _ShortlexTable:
    """Random access to reduced words, grouped by length, in shortlex order."""

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self._levels: list[list[Word]] = [[alphabet.empty_word()]]

    def words_of_length(self, n: int) -> list[Word]:
        letters = self.alphabet.ordered_letters
        while len(self._levels) <= n:
            nxt = []
            for w in self._levels[-1]:
                last = w.letters[-1] if w.letters else None
                for let in letters:
                    if last is not None and let == last.inverse():
                        continue
                    nxt.append(Word(self.alphabet, w.letters + (let,)))
            self._levels.append(nxt)
        return self._levels[n]


def trivial_word_stream(
    pres: Presentation,
) -> Iterator[tuple[Word, TrivialityCertificate]]:
    """Enumerate every certificate over the presentation, fairly.

    Certificates are ordered by total size, defined as

        factor count + summed conjugator lengths + max relator index,

    with the empty certificate (proving the empty word) first at size 0.
    Ties are broken by the deterministic loop order: factor count ascending,
    then max index, then the composition of conjugator lengths (lex
    ascending), then conjugator tuples in shortlex order, then index tuples,
    then sign tuples (+1 before -1).  Every certificate is emitted exactly
    once, paired with its reduced word, so a consumer that runs long enough
    sees every trivial word of the presented group.  Budgets elsewhere in
    this package are counted in emissions of this stream.

    The stream may emit the same word under different certificates; use
    ``unique_words`` to deduplicate.
    """
    pool = _RelatorPool(pres)
    table = _ShortlexTable(pres.generators)
    empty = pres.generators.empty_word()
    yield empty, TrivialityCertificate(())
    for size in itertools.count(1):
        pool.ensure(size)
        if pool.count == 0:
            if pool.exhausted:
                return
            continue
        for n in range(1, size + 1):
            rest = size - n
            for max_idx in range(0, min(rest, pool.count - 1) + 1):
                conj_total = rest - max_idx
                for comp in _compositions(conj_total, n):
                    word_lists = [table.words_of_length(ln) for ln in comp]
                    for conjs in itertools.product(*word_lists):
                        for idxs in itertools.product(range(max_idx + 1), repeat=n):
                            if max(idxs) != max_idx:
                                continue
                            for signs in itertools.product((1, -1), repeat=n):
                                w = empty
                                for c, i, e in zip(conjs, idxs, signs):
                                    r = pool.relator(i) if e == 1 else pool.inverse(i)
                                    w = w * c * r * invert(c)
                                cert = TrivialityCertificate(
                                    tuple(CertFactor(c, i, e) for c, i, e in zip(conjs, idxs, signs))
                                )
                                yield w, cert


def unique_words(
    stream: Iterator[tuple[Word, TrivialityCertificate]]
) -> Iterator[tuple[Word, TrivialityCertificate]]:
    """Pass through only the first certificate seen for each distinct word."""
    seen: set[Word] = set()
    for w, cert in stream:
        if w not in seen:
            seen.add(w)
            yield w, cert


@dataclass(frozen=True)
class ProvedTrivial:
    certificate: TrivialityCertificate
    steps: int


@dataclass(frozen=True)
class Exhausted:
    steps: int


def semidecide_trivial(
    pres: Presentation, w: Word, budget: int
) -> ProvedTrivial | Exhausted:
    """Search the certificate stream for ``w``; give up after ``budget`` emissions.

    Monotone in the budget: a word proved within b is proved, with the same
    certificate, within any b' >= b.
    """
    if w.alphabet != pres.generators:
        raise ValueError("word is not over the presentation's generators")
    target = free_reduce(w)
    steps = 0
    for word, cert in itertools.islice(trivial_word_stream(pres), budget):
        steps += 1
        if word == target:
            return ProvedTrivial(cert, steps)
    return Exhausted(steps)


# --------------------------------------------------------------------------
# abelianization via integer Smith normal form


@dataclass(frozen=True)
class IntMatrix:
    """An immutable integer matrix with explicit shape (entries are exact ints)."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match declared shape")

    @classmethod
    def from_rows(cls, rows: list[list[int]], cols: int | None = None) -> "IntMatrix":
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count from an empty row list")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("matrix shape mismatch")
        rows = []
        for i in range(self.rows):
            rows.append(
                tuple(
                    sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                )
            )
        return IntMatrix(self.rows, other.cols, tuple(rows))

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))


def exponent_matrix(pres: FinitePresentation) -> IntMatrix:
    """Relator-by-generator matrix of exponent sums."""
    gens = pres.generators.generators
    index = {g: i for i, g in enumerate(gens)}
    rows = []
    for r in pres.relators:
        row = [0] * len(gens)
        for let in r.letters:
            row[index[let.gen]] += let.sign
        rows.append(tuple(row))
    return IntMatrix(len(pres.relators), len(gens), tuple(rows))


def exponent_vector(alphabet: Alphabet, w: Word) -> tuple[int, ...]:
    index = {g: i for i, g in enumerate(alphabet.generators)}
    row = [0] * len(alphabet.generators)
    for let in w.letters:
        row[index[let.gen]] += let.sign
    return tuple(row)


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return unimodular (U, D, V) with D = U @ a @ V in Smith normal form.

    D is diagonal with nonnegative entries and d1 | d2 | ... ; U and V have
    determinant +-1.  All arithmetic is exact over Python ints.
    """
    rows, cols = a.rows, a.cols
    m = [list(r) for r in a.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row[dst] += q * row[src]
        for j in range(cols):
            m[dst][j] += q * m[src][j]
        for j in range(rows):
            u[dst][j] += q * u[src][j]

    def add_col(src, dst, q):
        for row in m:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    k = 0
    while k < rows and k < cols:
        # find a pivot of smallest absolute value in the trailing submatrix
        pivot = None
        for i in range(k, rows):
            for j in range(k, cols):
                if m[i][j] != 0 and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        # clear row and column k; restart if a remainder shrinks the pivot
        dirty = True
        while dirty:
            dirty = False
            for i in range(k + 1, rows):
                if m[i][k] != 0:
                    q = m[i][k] // m[k][k]
                    add_row(k, i, -q)
                    if m[i][k] != 0:
                        swap_rows(k, i)
                        dirty = True
            for j in range(k + 1, cols):
                if m[k][j] != 0:
                    q = m[k][j] // m[k][k]
                    add_col(k, j, -q)
                    if m[k][j] != 0:
                        swap_cols(k, j)
                        dirty = True
        # enforce divisibility: the pivot must divide every trailing entry
        fixed = False
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                if m[i][j] % m[k][k] != 0:
                    add_row(i, k, 1)
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if m[k][k] < 0:
            negate_row(k)
        k += 1

    U = IntMatrix.from_rows(u, rows) if rows else IntMatrix.zero(0, 0)
    V = IntMatrix.from_rows(v, cols) if cols else IntMatrix.zero(0, 0)
    D = IntMatrix.from_rows(m, cols) if rows else IntMatrix.zero(0, cols)
    return U, D, V


def abelianization_invariants(pres: FinitePresentation) -> tuple[int, tuple[int, ...]]:
    """Return (free rank, torsion orders) of the presented group's abelianization.

    Torsion orders come out in divisibility order (each divides the next).
    """
    _, d, _ = smith_normal_form(exponent_matrix(pres))
    diag = d.diagonal()
    nonzero = [x for x in diag if x != 0]
    free_rank = len(pres.generators) - len(nonzero)
    torsion = tuple(x for x in nonzero if x > 1)
    return free_rank, torsion


def is_perfect(pres: FinitePresentation) -> bool:
    """True when the abelianization is trivial (rank 0, no torsion)."""
    return abelianization_invariants(pres) == (0, ())
