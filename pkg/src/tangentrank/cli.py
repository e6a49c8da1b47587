"""Command-line interface.

Exit codes: 0 success / verdict as expected; 2 the mathematical verdict
differs from the command's expectation; 3 input error; 4 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (AllTrialsDegenerate, BudgetExceeded, DegenerateParameters,
                     DimensionMismatch, InconsistentDiagram, NonzeroMinor,
                     OutOfScope, ParseError, TangentRankError)
from .pipeline import compute_dims, params_from_json_dict, pipeline_stages
from .rank import (certify_dominance, detect_first_order_relation,
                   detect_relation, prove_first_order_relation,
                   relation_symbolic, trial_rng)
from .reporting import (_bound_payload, _proof_payload, certificate_to_dict,
                        default_out_dir, relation_battery, run_dominance_grid,
                        run_relation_cells, write_certificate)
from .scalars import QQ, PrimeField, random_prime

EXIT_OK = 0
EXIT_VERDICT = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tangentrank",
        description="Exact dominance and first-order-relation certification "
                    "for syzygy-parameterized curve morphisms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_dims = sub.add_parser("dims", help="integer bookkeeping for a (n, d) cell")
    p_dims.add_argument("--n", type=int, required=True)
    p_dims.add_argument("--d", type=int, required=True)
    p_dims.add_argument("--format", choices=("text", "json"), default="text")

    p_ex = sub.add_parser("example",
                          help="print all pipeline stages for a params file")
    p_ex.add_argument("params_file")
    p_ex.add_argument("--format", choices=("text", "json"), default="text")

    p_cert = sub.add_parser("certify", help="dominance certificate for (n, d)")
    p_cert.add_argument("--n", type=int, required=True)
    p_cert.add_argument("--d", type=int, required=True)
    p_cert.add_argument("--field", choices=("q", "fp"), default="q")
    p_cert.add_argument("--prime", type=int, default=None,
                        help="modulus for --field fp (random > 1e6 when omitted)")
    p_cert.add_argument("--seed", type=int, default=0)
    p_cert.add_argument("--trials", type=int, default=1)
    p_cert.add_argument("--bound", type=int, default=99)
    p_cert.add_argument("--out", default=None, help="certificate path (JSON)")

    p_rel = sub.add_parser("relations",
                           help="first-order relation evidence for degree n+1")
    p_rel.add_argument("--n", type=int, required=True)
    p_rel.add_argument("--field", choices=("battery", "q", "fp"), default="battery",
                       help="battery = rationals plus two random primes")
    p_rel.add_argument("--prime", type=int, default=None)
    p_rel.add_argument("--seed", type=int, default=0)
    p_rel.add_argument("--trials", type=int, default=20)
    p_rel.add_argument("--bound", type=int, default=99)
    p_rel.add_argument("--notion", choices=("syzygy", "coefficient-rank"),
                       default="syzygy",
                       help="syzygy = linear-form relation among the F "
                            "components (sound); coefficient-rank = literal "
                            "proportionality of coefficient rows")
    p_rel.add_argument("--symbolic", action="store_true",
                       help="also run the symbolic mode (n <= 5)")
    p_rel.add_argument("--out", default=None, help="report path (JSON)")

    p_rep = sub.add_parser("reproduce", help="batch reproduction runs")
    p_rep.add_argument("--thm", choices=("12", "13"), required=True)
    p_rep.add_argument("--config", default=None, help="JSON config file")
    p_rep.add_argument("--out", default=None, help="output directory")
    p_rep.add_argument("--seed", type=int, default=None)
    p_rep.add_argument("--jobs", type=int, default=None)
    return parser


def _ring_for(field: str, prime, seed: int):
    if field == "q":
        return QQ
    if prime is None:
        prime = random_prime(trial_rng(seed, "cli-prime"))
    return PrimeField(prime)


def cmd_dims(args) -> int:
    dims = compute_dims(args.n, args.d)
    diff = dims.domain_dim - dims.codomain_dim
    if args.format == "json":
        payload = {"n": dims.n, "d": dims.d, "q": dims.q, "a": dims.a,
                   "b": dims.b, "domain_dim": dims.domain_dim,
                   "codomain_dim": dims.codomain_dim, "difference": diff}
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(f"n={dims.n} d={dims.d}: q={dims.q} a={dims.a} b={dims.b} "
              f"domain={dims.domain_dim} codomain={dims.codomain_dim} "
              f"difference={diff}")
    return EXIT_OK


def cmd_example(args) -> int:
    path = Path(args.params_file)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON in {path}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    ring = QQ
    if isinstance(data.get("field"), dict) and "prime" in data["field"]:
        ring = PrimeField(int(data["field"]["prime"]))
    params = params_from_json_dict(data, ring=ring)
    lp, curve, jac, w, fh = pipeline_stages(params)
    if args.format == "json":
        payload = {
            "n": params.dims.n, "d": params.dims.d,
            "lp": [[p.render() for p in row] for row in lp.entries],
            "g": [g.render() for g in curve.polys],
            "j": [[p.render() for p in row] for row in jac.entries],
            "lp_j": [[p.render() for p in row] for row in w.entries],
            "f": [p.render() for p in fh.f],
            "h": [p.render() for p in fh.h],
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("LP (syzygy matrix):")
        print(lp.render())
        print("\nG (signed maximal minors):")
        print("[" + ", ".join(g.render() for g in curve.polys) + "]")
        print("\nJ (Jacobian of G; columns d/ds, d/dt):")
        print(jac.render())
        print("\nLP.J:")
        print(w.render())
        print("\nFH (components F then H):")
        print("[" + ", ".join(p.render() for p in list(fh.f) + list(fh.h)) + "]")
    return EXIT_OK


def cmd_certify(args) -> int:
    ring = _ring_for(args.field, args.prime, args.seed)
    cert = certify_dominance(args.n, args.d, ring=ring, seed=args.seed,
                             bound=args.bound, trials=args.trials)
    out = Path(args.out) if args.out else (
        default_out_dir() / f"certify_n{args.n}_d{args.d}.json")
    write_certificate(cert, out)
    print(f"{cert.verdict}: rank {cert.observed_rank}/{cert.target_rank} "
          f"over {cert.field_name} (certificate: {out})")
    return EXIT_OK if cert.verdict == "dominant-certified" else EXIT_VERDICT


def cmd_relations(args) -> int:
    notion = ("first-order-syzygy" if args.notion == "syzygy"
              else "coefficient-proportionality")
    payload: dict
    if args.field == "battery":
        battery = relation_battery(args.n, seed=args.seed,
                                   prime_trials=args.trials, bound=args.bound,
                                   notion=notion)
        verdict = battery["verdict"]
        payload = {
            "n": args.n,
            "notion": notion,
            "verdict": verdict,
            "primes": battery["primes"],
            "combined_error_bound": _bound_payload(battery["combined_error_bound"]),
            "certificates": [certificate_to_dict(c) for c in battery["certificates"]],
        }
    else:
        ring = _ring_for(args.field, args.prime, args.seed)
        detect = (detect_first_order_relation if notion == "first-order-syzygy"
                  else detect_relation)
        cert = detect(args.n, ring=ring, seed=args.seed, trials=args.trials,
                      bound=args.bound)
        verdict = cert.verdict
        payload = {"n": args.n, "notion": notion, "verdict": verdict,
                   "certificates": [certificate_to_dict(cert)]}
    if args.symbolic:
        if notion == "first-order-syzygy":
            proof = prove_first_order_relation(args.n, seed=args.seed,
                                               bound=args.bound)
            payload["symbolic_proof"] = _proof_payload(proof)
            if proof.conclusion != "relation-proved":
                verdict = payload["verdict"] = "no-relation-detected"
        else:
            try:
                minors = relation_symbolic(args.n)
                payload["symbolic_minors_zero"] = len(minors)
            except NonzeroMinor as exc:
                payload["symbolic_refutation"] = str(exc)
                verdict = payload["verdict"] = "no-relation-detected"
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    print(text)
    return EXIT_OK if verdict == "relation-detected" else EXIT_VERDICT


def cmd_reproduce(args) -> int:
    config = {}
    if args.config:
        try:
            config = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except FileNotFoundError:
            print(f"error: no such config: {args.config}", file=sys.stderr)
            return EXIT_INPUT
        except json.JSONDecodeError as exc:
            print(f"error: malformed config JSON: {exc}", file=sys.stderr)
            return EXIT_INPUT
    seed = args.seed if args.seed is not None else int(config.get("seed", 0))
    out = Path(args.out) if args.out else (
        default_out_dir() / f"reproduce_thm{args.thm}")
    if args.thm == "12":
        grid = config.get("grid")
        if grid is not None:
            grid = [tuple(cell) for cell in grid]
        summary = run_dominance_grid(
            out, seed=seed, bound=int(config.get("bound", 99)),
            trials=int(config.get("trials", 1)),
            jobs=args.jobs or config.get("jobs"),
            prime=config.get("prime"), grid=grid)
        print(f"{summary['cell_count']} cells "
              f"(per n: {summary['row_counts']}), "
              f"all dominant: {summary['all_match']}")
    else:
        summary = run_relation_cells(
            out, seed=seed,
            rational_trials=int(config.get("rational_trials", 5)),
            prime_trials=int(config.get("prime_trials", 20)),
            bound=int(config.get("bound", 99)),
            symbolic=bool(config.get("symbolic", True)),
            notion=config.get("notion", "first-order-syzygy"),
            cells=config.get("cells"))
        print(f"{len(summary['cells'])} cells, "
              f"all relation-detected: {summary['all_match']}")
    for cell in summary["cells"]:
        label = (f"n={cell['n']} d={cell['d']}" if "d" in cell
                 else f"n={cell['n']}")
        print(f"  {label}: {cell['verdict']}")
    print(f"reports written to {out}")
    return EXIT_OK if summary["all_match"] else EXIT_VERDICT


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"dims": cmd_dims, "example": cmd_example, "certify": cmd_certify,
                "relations": cmd_relations, "reproduce": cmd_reproduce}
    try:
        return handlers[args.command](args)
    except (OutOfScope, ParseError, DimensionMismatch, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DegenerateParameters, AllTrialsDegenerate) as exc:
        print(f"math failure: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except (InconsistentDiagram, AssertionError) as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except TangentRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
