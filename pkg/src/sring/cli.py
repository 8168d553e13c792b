"""Command-line surface: JSON on stdout, deterministic output.

Exit codes: 0 success, 1 property violation (--expect-schurian mismatch or a
failed check), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .constructions import WreathSpec, dual, generalized_wreath, tensor
from .enumeration import catalog_to_jsonl, enumerate_srings
from .errors import SRingError
from .groups import AbelianGroup, generated_subgroup, make_group, section_make
from .repro import check_theorems, repro_t2, repro_t3
from .schurity import classify_e4cn, is_cyclotomic, is_normal_sring, is_schurian
from .srings import (
    partition_from_json,
    partition_to_json,
    sring_closure,
    validate,
)


def _load_partition(path: str):
    with open(path) as fh:
        return partition_from_json(fh.read())


def _load_sring(args):
    G, classes = _load_partition(args.partition)
    if args.group and AbelianGroup.from_spec(args.group) != G:
        raise SRingError("group literal disagrees with the partition file")
    return validate(G, classes)


def _emit(payload, out_path=None):
    text = payload if isinstance(payload, str) else json.dumps(payload, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sring", description="S-rings over finite abelian groups"
    )
    parser.add_argument("--threads", type=int, default=1,
                        help="worker hint; affects speed only, never output")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(verb, **kwargs):
        p = sub.add_parser(verb, **kwargs)
        p.add_argument("--group", help="group literal, e.g. 8x2x3")
        p.add_argument("--partition", help="partition JSON file")
        p.add_argument("--out", help="output path (default stdout)")
        return p

    add("validate", help="validate a partition file as an S-ring")
    add("closure", help="coarsest S-ring refining a partition file")
    p = add("schurian", help="decide schurity")
    p.add_argument("--expect-schurian", action="store_true")
    add("aut", help="automorphism group order and orbit data")
    add("cyclotomic", help="decide cyclotomicity")
    add("normal", help="decide normality")
    add("dual", help="emit the dual S-ring")
    add("classify", help="clause tags over E4 x C_n")
    p = add("tensor", help="tensor product of two partition files")
    p.add_argument("--partition2", required=True)
    p = add("gwreath", help="generalized wreath from bottom/top partition files")
    p.add_argument("--bottom", required=True, help="bottom partition file")
    p.add_argument("--top", required=True, help="top partition file")
    p.add_argument("--u-gens", required=True, help="U generators, e.g. '2,0,0;0,1,0'")
    p.add_argument("--l-gens", required=True, help="L generators")
    p.add_argument("--bottom-images", required=True, help="images of bottom generators")
    p.add_argument("--top-images", required=True, help="images of top generators")
    add("enumerate", help="catalog of all S-rings over a group")
    p = add("repro", help="reproduce a paper instance: t2/t3/theorems")
    p.add_argument("what", choices=["t2", "t3", "theorems"])
    p.add_argument("--p", type=int, default=3)

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except SRingError as err:
        _emit({"error": type(err).__name__, "message": str(err)})
        return 2
    except FileNotFoundError as err:
        _emit({"error": "FileNotFound", "message": str(err)})
        return 2


def _parse_gens(G, text):
    return [G.index_of([int(t) for t in part.split(",")]) for part in text.split(";")]


def _dispatch(args) -> int:
    verb = args.verb
    if verb == "validate":
        A = _load_sring(args)
        _emit(partition_to_json(A), args.out)
        return 0
    if verb == "closure":
        G, classes = _load_partition(args.partition)
        _emit(partition_to_json(sring_closure(G, classes)), args.out)
        return 0
    if verb == "schurian":
        A = _load_sring(args)
        report = is_schurian(A)
        _emit(report.to_json(), args.out)
        if args.expect_schurian and not report.schurian:
            return 1
        return 0
    if verb == "aut":
        from .autsearch import aut_sring

        A = _load_sring(args)
        K = aut_sring(A)
        _emit(
            {
                "aut_order": str(K.order),
                "degree": K.degree,
                "generators": [g.tolist() for g in K.generators],
            },
            args.out,
        )
        return 0
    if verb == "cyclotomic":
        A = _load_sring(args)
        ok, star = is_cyclotomic(A)
        _emit({"cyclotomic": ok, "aut_g_order": len(star)}, args.out)
        return 0
    if verb == "normal":
        A = _load_sring(args)
        _emit({"normal": is_normal_sring(A)}, args.out)
        return 0
    if verb == "dual":
        A = _load_sring(args)
        _emit(partition_to_json(dual(A)), args.out)
        return 0
    if verb == "classify":
        A = _load_sring(args)
        _emit({"clauses": sorted(classify_e4cn(A))}, args.out)
        return 0
    if verb == "tensor":
        A1 = _load_sring(args)
        G2, classes2 = _load_partition(args.partition2)
        A2 = validate(G2, classes2)
        _emit(partition_to_json(tensor(A1, A2)), args.out)
        return 0
    if verb == "gwreath":
        G = make_group(AbelianGroup.from_spec(args.group).factors)
        Gb, classes_b = _load_partition(args.bottom)
        Gt, classes_t = _load_partition(args.top)
        bottom = validate(Gb, classes_b)
        top = validate(Gt, classes_t)
        U = generated_subgroup(G, _parse_gens(G, args.u_gens))
        L = generated_subgroup(G, _parse_gens(G, args.l_gens))
        spec = WreathSpec(
            section=section_make(U, L),
            bottom=bottom,
            bottom_gen_images=tuple(_parse_gens(G, args.bottom_images)),
            top=top,
            top_gen_images=tuple(_parse_gens(G, args.top_images)),
        )
        _emit(partition_to_json(generalized_wreath(spec)), args.out)
        return 0
    if verb == "enumerate":
        G = AbelianGroup.from_spec(args.group)
        catalog = enumerate_srings(G)
        _emit(catalog_to_jsonl(catalog), args.out)
        return 0
    if verb == "repro":
        if args.what == "t2":
            result = repro_t2(args.p)
        elif args.what == "t3":
            result = repro_t3(args.p)
        else:
            report = check_theorems()
            _emit({k: bool(v) for k, v in report.items()}, args.out)
            return 0 if all(report.values()) else 1
        _emit(result.to_json(), args.out)
        return 0 if result.classes_match else 1
    raise SRingError(f"unknown verb {verb}")


if __name__ == "__main__":
    sys.exit(main())
