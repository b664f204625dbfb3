"""Census of short trivial words in BS(2,3) and their stream positions.

Answers two questions the test suite pins constants from:

  1. which reduced words of length <= L are trivial in BS(2,3) (brute
     shortlex scan against the Britton solver), and
  2. at what emission index the certificate stream first produces each
     of them.

The maximum over (2) is the budget within which any solver-trivial word
of length <= L is guaranteed to appear.
"""

import argparse
import itertools
import time

from fpw.bs import BS23, ST, bs_is_trivial, bs_presentation
from fpw.presentations import trivial_word_stream
from fpw.words import format_word, shortlex_stream


def census(max_len: int) -> list:
    found = []
    for word in shortlex_stream(ST):
        if len(word.letters) > max_len:
            break
        if bs_is_trivial(BS23, word):
            found.append(word)
    return found


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-len", type=int, default=10)
    parser.add_argument("--stream-cap", type=int, default=2_000_000,
                        help="give up on a word after this many emissions")
    args = parser.parse_args()

    t0 = time.time()
    words = census(args.max_len)
    print(f"trivial words of reduced length <= {args.max_len}: {len(words)} "
          f"(scan took {time.time() - t0:.1f}s)")

    pending = set(words)
    positions: dict = {}
    pres = bs_presentation(BS23)
    t0 = time.time()
    for idx, (w, _) in enumerate(itertools.islice(trivial_word_stream(pres), args.stream_cap)):
        if w in pending:
            pending.discard(w)
            positions[w] = idx + 1
            if not pending:
                break
    print(f"stream scan took {time.time() - t0:.1f}s")

    if pending:
        print(f"NOT FOUND within {args.stream_cap} emissions: {len(pending)} words")
        for w in sorted(pending, key=lambda v: v.shortlex_key()):
            print(f"  {format_word(w)!r}")
    for w in sorted(positions, key=lambda v: positions[v]):
        print(f"{positions[w]:>9}  {format_word(w)}")
    if positions:
        print(f"max position: {max(positions.values())}")


if __name__ == "__main__":
    main()
