"""Command-line front end.

One executable, ``fpw``, with a subcommand per operation.  Output is plain
text by default, byte-deterministic for fixed inputs; commands with
structured results accept ``--json``.

Exit codes: 0 success, 1 domain error (bad words, bad certificates, rejected
moves), 2 for searches that ran out of budget (Exhausted or Unverifiable),
64 for command-line usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .bs import (
    BS23,
    BSParams,
    KernelStream,
    ST,
    apply_f,
    bs_equal,
    bs_is_trivial,
    bs_presentation,
    britton_reduce_counted,
    doubling_map,
    f_preimage_witnesses,
    kernel_stream,
    w_family,
)
from .harness import (
    ExplicitFiniteSet,
    cantor_pair,
    cantor_unpair,
    compress_stream,
    recover_cardinality,
    tower_oracle,
)
from .presentations import (
    PresentationSyntaxError,
    TrivialityCertificate,
    abelianization_invariants,
    certificate_word,
    is_perfect,
    parse_presentation,
    trivial_word_stream,
)
from .search import (
    Found,
    Proved,
    SearchBudget,
    SubgroupFound,
    decide_homomorphism,
    iso_search,
    semidecide_homomorphism,
    subgroup_presentation_search,
)
from .tietze import (
    Invalid,
    TietzeError,
    Valid,
    apply_sequence,
    check_move,
    parse_move,
    parse_sequence,
    presentation_hash,
)
from .words import (
    Alphabet,
    GeneratorMap,
    WordParseError,
    format_word,
    free_reduce,
    parse_word,
    substitute,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; that code is taken."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _alphabet(text: str) -> Alphabet:
    return Alphabet.of(*(p.strip() for p in text.split(",")))


def _params(args) -> BSParams:
    return BSParams(args.m, args.n)


def _load_json_arg(text: str):
    """Inline JSON if it looks like it, else the contents of a file path."""
    stripped = text.strip()
    if stripped.startswith(("[", "{")):
        return json.loads(stripped)
    return json.loads(Path(text).read_text())


def _load_presentation(text: str):
    """Accept either presentation text or a path to a file holding one."""
    if "<" in text:
        return parse_presentation(text)
    return parse_presentation(Path(text).read_text())


def _print_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True))


# ---------------------------------------------------------------- words


def _cmd_reduce(args) -> int:
    alpha = _alphabet(args.alphabet)
    w = parse_word(alpha, args.word)
    print(format_word(free_reduce(w)))
    return EXIT_OK


# ---------------------------------------------------------------- bs


def _cmd_bs_triv(args) -> int:
    w = parse_word(ST, args.word)
    print("trivial" if bs_is_trivial(_params(args), w) else "nontrivial")
    return EXIT_OK


def _cmd_bs_equal(args) -> int:
    u = parse_word(ST, args.left)
    v = parse_word(ST, args.right)
    print("equal" if bs_equal(_params(args), u, v) else "different")
    return EXIT_OK


def _cmd_bs_reduce(args) -> int:
    w = parse_word(ST, args.word)
    sw, pinches = britton_reduce_counted(_params(args), w)
    if args.json:
        _print_json({"normal_form": sw.format(), "pinches": pinches})
    else:
        print(sw.format())
        print(f"pinches: {pinches}")
    return EXIT_OK


def _cmd_apply_f(args) -> int:
    w = parse_word(ST, args.word)
    print(format_word(apply_f(w, args.iterate)))
    return EXIT_OK


def _cmd_wfam(args) -> int:
    print(format_word(w_family(args.iterate)))
    return EXIT_OK


def _cmd_kernel_enum(args) -> int:
    stream: KernelStream = kernel_stream(args.iterate)
    for _ in range(args.count):
        print(format_word(next(stream)))
    return EXIT_OK


# ---------------------------------------------------------------- presentations


def _cmd_enum_trivial(args) -> int:
    pres = _load_presentation(args.presentation)
    emitted = []
    for (w, cert), _ in zip(trivial_word_stream(pres), range(args.count)):
        emitted.append((w, cert))
    if args.json:
        _print_json([{"word": format_word(w), "cert": c.to_json()} for w, c in emitted])
    else:
        for w, _ in emitted:
            print(format_word(w))
    return EXIT_OK


def _cmd_check_cert(args) -> int:
    pres = _load_presentation(args.presentation)
    w = parse_word(pres.generators, args.word)
    cert = TrivialityCertificate.from_json(pres.generators, _load_json_arg(args.cert))
    derived = certificate_word(pres, cert)
    if derived == w:
        print("valid")
        return EXIT_OK
    print(f"invalid: certificate derives '{format_word(derived)}'")
    return EXIT_DOMAIN


def _cmd_abelian(args) -> int:
    pres = _load_presentation(args.presentation)
    rank, torsion = abelianization_invariants(pres)
    if args.json:
        _print_json({"free_rank": rank, "torsion": list(torsion)})
    else:
        print(f"free rank: {rank}")
        print("torsion: " + (", ".join(str(d) for d in torsion) if torsion else "none"))
    return EXIT_OK


def _cmd_perfect(args) -> int:
    pres = _load_presentation(args.presentation)
    print("perfect" if is_perfect(pres) else "not perfect")
    return EXIT_OK


# ---------------------------------------------------------------- search


def _cmd_hom_check(args) -> int:
    dom = _load_presentation(args.presentation)
    cod = _load_presentation(args.codomain)
    phi = GeneratorMap.parse(dom.generators, cod.generators, args.map)
    outcome = semidecide_homomorphism(phi, dom, cod, args.budget)
    if isinstance(outcome, Proved):
        print(f"proved in {outcome.steps} steps")
        return EXIT_OK
    print(f"exhausted after {outcome.steps} steps")
    return EXIT_BUDGET


def _cmd_hom_decide(args) -> int:
    dom = _load_presentation(args.presentation)
    phi = GeneratorMap.parse(dom.generators, ST, args.map)
    params = _params(args)
    ok = decide_homomorphism(phi, dom, lambda w: bs_is_trivial(params, w))
    print("homomorphism" if ok else "not a homomorphism")
    return EXIT_OK


def _cmd_iso_search(args) -> int:
    left = _load_presentation(args.presentation)
    right = _load_presentation(args.codomain)
    budget = SearchBudget(args.candidates, args.budget)
    outcome = iso_search(left, right, budget)
    if isinstance(outcome, Found):
        if args.json:
            _print_json(
                {
                    "pair": outcome.pair_index,
                    "steps": outcome.steps,
                    "witness": outcome.witness.to_json(),
                }
            )
        else:
            print(f"found: pair {outcome.pair_index} after {outcome.steps} steps")
            print(f"forward: {outcome.witness.forward.format()}")
            print(f"backward: {outcome.witness.backward.format()}")
        return EXIT_OK
    print(f"exhausted after {outcome.steps} units")
    return EXIT_BUDGET


def _cmd_subgrp(args) -> int:
    params = _params(args)
    parent = bs_presentation(params)
    gens = [parse_word(ST, text.strip()) for text in args.gens.split(",")]
    target = _load_presentation(args.codomain)
    budget = SearchBudget(args.candidates, args.budget)
    outcome = subgroup_presentation_search(
        parent, lambda w: bs_is_trivial(params, w), gens, target, budget
    )
    if isinstance(outcome, SubgroupFound):
        if args.json:
            _print_json(
                {
                    "k": outcome.k,
                    "steps": outcome.steps,
                    "presentation": outcome.presentation.format(),
                    "witness": outcome.witness.to_json(),
                }
            )
        else:
            print(f"found: k={outcome.k} after {outcome.steps} units")
            print(f"presentation: {outcome.presentation.format()}")
            print(f"to-subgroup: {outcome.witness.forward.format()}")
            print(f"from-subgroup: {outcome.witness.backward.format()}")
        return EXIT_OK
    print(f"exhausted after {outcome.steps} units")
    return EXIT_BUDGET


# ---------------------------------------------------------------- tietze


def _cmd_tietze_apply(args) -> int:
    pres = _load_presentation(args.presentation)
    moves_data = _load_json_arg(args.moves)
    if not isinstance(moves_data, list):
        raise ValueError("moves must be a JSON list")
    moves = parse_sequence(pres, moves_data)
    result, log = apply_sequence(pres, moves)
    if args.json:
        _print_json(
            {
                "presentation": result.format(),
                "hash": presentation_hash(result),
                "log": log.to_json(),
            }
        )
    else:
        print(result.format())
        print(f"hash: {presentation_hash(result)}")
    return EXIT_OK


def _cmd_tietze_check(args) -> int:
    pres = _load_presentation(args.presentation)
    move = parse_move(pres, _load_json_arg(args.move))
    outcome = check_move(pres, move, args.budget)
    if isinstance(outcome, Valid):
        if args.json:
            cert = None if outcome.certificate is None else outcome.certificate.to_json()
            _print_json({"verdict": "valid", "cert": cert})
        else:
            print("valid")
        return EXIT_OK
    if isinstance(outcome, Invalid):
        print(f"invalid: {outcome.reason}")
        return EXIT_DOMAIN
    print(f"unverifiable at budget {outcome.budget}")
    return EXIT_BUDGET


# ---------------------------------------------------------------- harness


def _cmd_pair(args) -> int:
    print(cantor_pair(args.x, args.y))
    return EXIT_OK


def _cmd_unpair(args) -> int:
    x, y = cantor_unpair(args.z)
    print(f"{x} {y}")
    return EXIT_OK


def _cmd_compress(args) -> int:
    values = [int(p) for p in args.values.split(",")] if args.values else []
    print(",".join(str(v) for v in compress_stream(values)))
    return EXIT_OK


# ---------------------------------------------------------------- demos


def _cmd_demo_non_hopfian(args) -> int:
    params = BS23
    pres = bs_presentation(params)
    f = doubling_map()

    hom = semidecide_homomorphism(f, pres, pres, args.budget)
    checks = [("the doubling map is a homomorphism", isinstance(hom, Proved))]

    pre = f_preimage_witnesses()
    surjective = all(
        bs_equal(params, substitute(pre.image(g), f), ST.gen_word(g.name))
        for g in ST.generators
    )
    checks.append(("every generator has a preimage, so it is surjective", surjective))

    w1 = w_family(1)
    checks.append(("w1 is nontrivial", not bs_is_trivial(params, w1)))
    checks.append(("f(w1) is trivial", bs_is_trivial(params, substitute(w1, f))))

    failed = False
    for label, ok in checks:
        print(f"{'ok' if ok else 'FAIL'}: {label}")
        failed = failed or not ok
    if failed:
        return EXIT_DOMAIN
    print("conclusion: a surjective endomorphism with nontrivial kernel")
    return EXIT_OK


def _cmd_demo_recover_card(args) -> int:
    w_set = ExplicitFiniteSet.parse(args.set)
    oracle = tower_oracle(len(w_set))
    k = recover_cardinality(oracle, args.kmax)
    print(f"|W| = {k}")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_mn(p: argparse.ArgumentParser) -> None:
    p.add_argument("-m", type=int, default=2, help="left exponent (default 2)")
    p.add_argument("-n", type=int, default=3, help="right exponent (default 3)")


def build_parser() -> _Parser:
    parser = _Parser(prog="fpw", description="finitely presented group workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="freely reduce a word")
    p.add_argument("word")
    p.add_argument("--alphabet", default="s,t", help="comma-separated generator names")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("bs-triv", help="decide triviality in BS(m,n)")
    p.add_argument("word")
    _add_mn(p)
    p.set_defaults(func=_cmd_bs_triv)

    p = sub.add_parser("bs-equal", help="decide equality in BS(m,n)")
    p.add_argument("left")
    p.add_argument("right")
    _add_mn(p)
    p.set_defaults(func=_cmd_bs_equal)

    p = sub.add_parser("bs-reduce", help="Britton normal form and pinch count")
    p.add_argument("word")
    _add_mn(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bs_reduce)

    p = sub.add_parser("apply-f", help="apply the doubling endomorphism i times")
    p.add_argument("word")
    p.add_argument("-i", "--iterate", type=int, default=1)
    p.set_defaults(func=_cmd_apply_f)

    p = sub.add_parser("wfam", help="print the i-th witness word w_i")
    p.add_argument("-i", "--iterate", type=int, required=True)
    p.set_defaults(func=_cmd_wfam)

    p = sub.add_parser("kernel-enum", help="enumerate kernel words of the i-th iterate")
    p.add_argument("-i", "--iterate", type=int, required=True)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(func=_cmd_kernel_enum)

    p = sub.add_parser("enum-trivial", help="enumerate provably trivial words")
    p.add_argument("-p", "--presentation", required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_enum_trivial)

    p = sub.add_parser("check-cert", help="verify a triviality certificate")
    p.add_argument("-p", "--presentation", required=True)
    p.add_argument("word")
    p.add_argument("--cert", required=True, help="certificate JSON (inline or a file path)")
    p.set_defaults(func=_cmd_check_cert)

    p = sub.add_parser("abelian", help="abelianization invariants")
    p.add_argument("-p", "--presentation", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_abelian)

    p = sub.add_parser("perfect", help="is the abelianization trivial?")
    p.add_argument("-p", "--presentation", required=True)
    p.set_defaults(func=_cmd_perfect)

    p = sub.add_parser("hom-check", help="semi-decide that a map is a homomorphism")
    p.add_argument("-p", "--presentation", required=True, help="domain presentation")
    p.add_argument("-q", "--codomain", required=True, help="codomain presentation")
    p.add_argument("--map", required=True, help='e.g. "s=s,t=t^2"')
    p.add_argument("--budget", type=int, default=20000)
    p.set_defaults(func=_cmd_hom_check)

    p = sub.add_parser("hom-decide", help="decide a map into BS(m,n)")
    p.add_argument("-p", "--presentation", required=True, help="domain presentation")
    p.add_argument("--map", required=True, help="images over s,t")
    _add_mn(p)
    p.set_defaults(func=_cmd_hom_decide)

    p = sub.add_parser("iso-search", help="search for an isomorphism witness")
    p.add_argument("-p", "--presentation", required=True)
    p.add_argument("-q", "--codomain", required=True)
    p.add_argument("--candidates", type=int, default=2000, help="map pairs to try")
    p.add_argument("--budget", type=int, default=20000, help="stream emissions per side")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_iso_search)

    p = sub.add_parser(
        "subgrp-presentation", help="search for a subgroup presentation in BS(m,n)"
    )
    p.add_argument("--gens", required=True, help="comma-separated generating words over s,t")
    p.add_argument("-q", "--codomain", required=True, help="conjectured presentation")
    _add_mn(p)
    p.add_argument("--candidates", type=int, default=2000)
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_subgrp)

    p = sub.add_parser("tietze-apply", help="apply a JSON list of moves")
    p.add_argument("-p", "--presentation", required=True)
    p.add_argument("--moves", required=True, help="moves JSON (inline or a file path)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_tietze_apply)

    p = sub.add_parser("tietze-check", help="validate one move, searching if needed")
    p.add_argument("-p", "--presentation", required=True)
    p.add_argument("--move", required=True, help="move JSON (inline or a file path)")
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_tietze_check)

    p = sub.add_parser("pair", help="Cantor pairing")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    p.set_defaults(func=_cmd_pair)

    p = sub.add_parser("unpair", help="Cantor unpairing")
    p.add_argument("z", type=int)
    p.set_defaults(func=_cmd_unpair)

    p = sub.add_parser("compress", help="deduplicate a finite int stream")
    p.add_argument("values", help="comma-separated non-negative integers")
    p.set_defaults(func=_cmd_compress)

    demo = sub.add_parser("demo", help="worked demonstrations")
    demo_sub = demo.add_subparsers(dest="demo_command", required=True)

    p = demo_sub.add_parser("non-hopfian", help="machine-checked non-Hopf argument")
    p.add_argument("--budget", type=int, default=20000)
    p.set_defaults(func=_cmd_demo_non_hopfian)

    p = demo_sub.add_parser("recover-card", help="recover |W| from the tower oracle")
    p.add_argument("--set", default="4,7", help="comma-separated finite set W")
    p.add_argument("--kmax", type=int, default=5)
    p.set_defaults(func=_cmd_demo_recover_card)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (WordParseError, PresentationSyntaxError, TietzeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except json.JSONDecodeError as e:
        print(f"error: bad JSON: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
