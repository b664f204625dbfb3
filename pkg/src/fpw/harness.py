"""Encodings and the cardinality-recovery pipeline.

Small computability plumbing: the Cantor pairing bijection N^2 -> N and its
n-ary extension, lazy compression of a natural-number stream onto an initial
segment of N, and the quotient-tower construction that turns a finite set W
into a recursively presented group whose word problem remembers only |W|.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .bs import BS23, ST, apply_f, bs_is_trivial, bs_presentation, kernel_stream, w_family
from .presentations import RecursivePresentation
from .words import Word


def cantor_pair(x: int, y: int) -> int:
    """The pairing (x + y)(x + y + 1)/2 + y, a bijection N^2 -> N."""
    if x < 0 or y < 0:
        raise ValueError("cantor_pair takes naturals")
    return (x + y) * (x + y + 1) // 2 + y


def cantor_unpair(z: int) -> tuple[int, int]:
    if z < 0:
        raise ValueError("cantor_unpair takes a natural")
    w = (math.isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def cantor_tuple(xs: tuple[int, ...]) -> int:
    """Left-fold pairing: (x1, ..., xn) -> <...<<x1, x2>, x3>..., xn>."""
    if not xs:
        raise ValueError("cannot encode the empty tuple")
    acc = xs[0]
    for x in xs[1:]:
        acc = cantor_pair(acc, x)
    return acc


def cantor_untuple(z: int, n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError("tuple arity must be >= 1")
    out: list[int] = []
    for _ in range(n - 1):
        z, last = cantor_unpair(z)
        out.append(last)
    out.append(z)
    return tuple(reversed(out))


def compress_stream(source: Iterable[int]) -> Iterator[int]:
    """Lazily emit 0, 1, 2, ... once per distinct element of the source.

    Repeats are skipped, so an empty source yields nothing, a source with k
    distinct elements yields exactly 0..k-1, and a source with infinitely
    many distinct elements enumerates all of N.
    """
    seen: set[int] = set()
    for x in source:
        if x < 0:
            raise ValueError("compress_stream takes naturals")
        if x not in seen:
            seen.add(x)
            yield len(seen) - 1


@dataclass(frozen=True)
class ExplicitFiniteSet:
    """A finite set of naturals, stored sorted and duplicate-free.

    Text syntax: comma-separated naturals, e.g. ``4,7``; empty text is the
    empty set.
    """

    elements: tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.elements):
            raise ValueError("elements must be naturals")
        if list(self.elements) != sorted(set(self.elements)):
            raise ValueError("elements must be strictly increasing; use .of()")

    @classmethod
    def of(cls, elements: Iterable[int]) -> "ExplicitFiniteSet":
        return cls(tuple(sorted(set(elements))))

    @classmethod
    def parse(cls, text: str) -> "ExplicitFiniteSet":
        text = text.strip()
        if not text:
            return cls(())
        return cls.of(int(tok) for tok in text.split(","))

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements


def tower_oracle(k: int) -> Callable[[Word], bool]:
    """The word oracle of the k-th quotient in the tower.

    A word is trivial in that quotient exactly when its k-fold doubling image
    is trivial in BS(2,3), so the oracle is total.
    """
    if k < 0:
        raise ValueError("tower level must be >= 0")

    def oracle(w: Word) -> bool:
        return bs_is_trivial(BS23, apply_f(w, k))

    return oracle


def quotient_tower_presentation(W: ExplicitFiniteSet) -> RecursivePresentation:
    """Present the |W|-th tower quotient over generators {s, t}.

    The relator stream emits the BS(2,3) relator first and then fairly
    interleaves the kernel streams of the (i+1)-fold doubling maps for i in
    compress(W), i.e. for i in 0..|W|-1.  For empty W the stream holds just
    the relator.
    """
    size = len(W)

    def source() -> Iterator[Word]:
        yield bs_presentation(BS23).relators[0]
        streams = [kernel_stream(i + 1) for i in compress_stream(iter(W))]
        if not streams:
            return
        for ks in itertools.cycle(streams):
            yield next(ks)

    return RecursivePresentation(ST, source)


def recover_cardinality(oracle: Callable[[Word], bool], k_max: int) -> int:
    """Read |W| back off a tower oracle known to sit at level <= k_max.

    Tests the witness words w_0 .. w_{k_max + 1} and returns the largest index
    the oracle calls trivial; for the level-k oracle that is exactly k.  The
    answer is only meaningful under the level bound, which is why the bound is
    an explicit argument.
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    best = 0
    for j in range(k_max + 2):
        if oracle(w_family(j)):
            best = j
    return best
