"""``gisim``: generate instances, run protocols, measure soundness and bandwidth.

Exit codes
    run       0 accept, 1 reject, 2 error
    oracle    0 member, 1 non-member, 3 budget exceeded, 2 error
    others    0 success, 2 error

The default seed is taken from ``GISIM_SEED`` when ``--seed`` is absent.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from typing import Sequence, TextIO

from . import gadgets, io
from .engine import run as run_protocol
from .generators import GenerationFailed, generate
from .graph import Graph
from .models import AnyModel, ChordModel, ModelError, ModelFit, PermutationModel, TrapezoidModel, is_proper_model
from .oracle import BudgetExceeded, brute_force_model
from .recognizers import STRATEGIES, ModelNotProper, Recognizer, StrategyInapplicable, adversary, get
from .recognizers.adversary import parse as parse_strategy
from .recognizers.registry import PROTOCOL_NAMES

EXIT_OK, EXIT_REJECT, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3


class CliError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("GISIM_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"GISIM_SEED must be an integer, got {raw!r}") from None


def _recognizer(args: argparse.Namespace) -> Recognizer:
    if args.protocol == "polygon-dmam" and args.k is None:
        raise CliError("polygon-dmam needs --k")
    try:
        return get(args.protocol, args.k)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _load(path: str) -> tuple[Graph, AnyModel | None]:
    try:
        return io.load(path)
    except io.DocumentError as exc:
        raise CliError(str(exc)) from None


def _matching_model(rec: Recognizer, model: AnyModel | None) -> AnyModel | None:
    """The embedded model in the recognizer's class, or None when it does not match."""
    if model is None or rec.cls is None:
        return None
    if rec.cls == "polygon" and isinstance(model, ChordModel) and rec.k == 2:
        return model.as_polygons()
    if rec.cls == "trapezoid" and isinstance(model, PermutationModel):
        return TrapezoidModel.from_permutation(model)
    if model.kind != rec.cls:
        return None
    if rec.cls == "polygon" and model.k != rec.k:  # type: ignore[union-attr]
        return None
    return model


def _prover(rec: Recognizer, g: Graph, model: AnyModel | None, name: str):
    base = _matching_model(rec, model)
    if name == "honest":
        if rec.cls is None:
            return rec.honest(g, None)
        if base is None:
            raise CliError(f"honest prover needs an embedded {rec.cls} model")
        try:
            return rec.honest(g, base)
        except ModelNotProper as exc:
            raise CliError(str(exc)) from None
    try:
        return adversary(name, g, rec, base)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _open_out(path: str | None) -> TextIO:
    return sys.stdout if path in (None, "-") else open(path, "w", newline="")


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


# ---------------------------------------------------------------------------


def cmd_generate(args: argparse.Namespace) -> int:
    if args.cls == "polygon" and args.k is None:
        raise CliError("--class polygon needs --k")
    if args.n < 2:
        raise CliError("--n must be at least 2")
    try:
        g, model = generate(args.cls, args.n, args.k, args.seed, sparse=args.sparse)
    except (GenerationFailed, ValueError) as exc:
        raise CliError(str(exc)) from None
    text = io.dumps(g, model)
    if args.out in (None, "-"):
        sys.stdout.write(text)
        print(io.sha256(text), file=sys.stderr)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(io.sha256(text))
    return EXIT_OK


def run_report(rec: Recognizer, g: Graph, transcript, seed: int) -> dict:
    return {
        "protocol": transcript.protocol,
        "graph_digest": io.graph_digest(g),
        "prover": transcript.prover,
        "verdict": "Accept" if transcript.accepted else "Reject",
        "rejecting_nodes": [[i, r] for i, r in transcript.rejecting()],
        "stats": {"max_cert_bits": transcript.stats.max_cert_bits, "max_msg_bits": transcript.stats.max_msg_bits},
        "seed": seed,
    }


def cmd_run(args: argparse.Namespace) -> int:
    rec = _recognizer(args)
    g, model = _load(args.graph)
    prover = _prover(rec, g, model, args.prover)
    t = run_protocol(rec.protocol, g, prover, args.seed)
    report = run_report(rec, g, t, args.seed)
    if args.format == "json":
        if args.transcript:
            report["transcript"] = t.to_json()
        sys.stdout.write(io.canonical(report))
    else:
        print(f"{report['protocol']} prover={report['prover']} seed={args.seed}: {report['verdict']}")
        for node_id, reason in report["rejecting_nodes"]:
            print(f"  reject id={node_id} reason={reason}")
        print(f"  max_cert_bits={t.stats.max_cert_bits} max_msg_bits={t.stats.max_msg_bits}")
    return EXIT_OK if t.accepted else EXIT_REJECT


def _membership_warning(rec: Recognizer, g: Graph, model: AnyModel | None) -> None:
    if rec.cls is None:
        return
    # an embedded proper model settles membership without the oracle
    if model is not None and is_proper_model(g, model) is ModelFit.PROPER:
        _warn(f"instance is a {rec.cls} graph; rejections here are not soundness evidence")
        return
    try:
        found = brute_force_model(g, rec.cls, rec.k)
    except BudgetExceeded:
        _warn(f"membership of this n={g.n} instance could not be oracle-verified; rates assume a non-member")
        return
    if found is not None:
        _warn(f"instance is a {rec.cls} graph; rejections here are not soundness evidence")


def cmd_soundness(args: argparse.Namespace) -> int:
    rec = _recognizer(args)
    g, model = _load(args.graph)
    if args.trials < 1:
        raise CliError("--trials must be at least 1")
    names = list(STRATEGIES) if args.strategies == "all" else [s.strip() for s in args.strategies.split(",") if s.strip()]
    for s in names:
        try:
            parse_strategy(s)
        except ValueError as exc:
            raise CliError(str(exc)) from None
    base = _matching_model(rec, model)
    _membership_warning(rec, g, base)
    rows = []
    for name in names:
        try:
            prover = adversary(name, g, rec, base)
        except StrategyInapplicable as exc:
            _warn(f"{name}: inapplicable ({exc})")
            continue
        rejected = sum(not run_protocol(rec.protocol, g, prover, args.seed + i).accepted for i in range(args.trials))
        rows.append((name, args.trials, rejected, f"{rejected / args.trials:.4f}"))
    if not rows:
        raise CliError("no requested strategy applies to this instance")
    out = _open_out(args.out)
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("strategy", "trials", "rejections", "rate"))
        w.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CliError(f"expected a comma-separated list of integers, got {text!r}") from None


def sweep_rows(rec: Recognizer, sizes: Sequence[int], seed: int) -> list[tuple[int, int, int, int]]:
    if rec.cls is None:
        raise CliError("sweep needs a class protocol")
    rows = []
    for n in sizes:
        if n < 2:
            raise CliError("sweep sizes must be at least 2")
        try:
            g, model = generate(rec.cls, n, rec.k, seed, sparse=True)
        except GenerationFailed as exc:
            raise CliError(str(exc)) from None
        t = run_protocol(rec.protocol, g, rec.honest(g, model), seed)
        if not t.accepted:
            raise CliError(f"honest run rejected at n={n}: {t.rejecting()[:3]}")
        rows.append((n, t.stats.max_cert_bits, t.stats.max_msg_bits, math.ceil(math.log2(n))))
    return rows


def cmd_sweep(args: argparse.Namespace) -> int:
    rec = _recognizer(args)
    rows = sweep_rows(rec, _int_list(args.n), args.seed)
    out = _open_out(args.out)
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("n", "cert_bits", "msg_bits", "log2n"))
        w.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    if args.cls == "polygon" and args.k is None:
        raise CliError("--class polygon needs --k")
    g, _ = _load(args.graph)
    try:
        model = brute_force_model(g, args.cls, args.k, budget=args.budget)
    except BudgetExceeded as exc:
        print(f"budget-exceeded ({exc})")
        return EXIT_BUDGET
    if model is None:
        print("non-member")
        return EXIT_REJECT
    print("member")
    if args.show_model:
        sys.stdout.write(io.canonical({"kind": model.kind, "assign": model.assign()}))
    return EXIT_OK


def cmd_gadget(args: argparse.Namespace) -> int:
    try:
        gadget = gadgets.build(args.family, args.n)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    model: AnyModel | None = gadgets.honest_model(gadget, "permutation" if args.family == "Q" else "circle")
    g = gadget.graph
    if args.cross:
        pair = _int_list(args.cross)
        if len(pair) != 2:
            raise CliError("--cross takes i,j")
        try:
            g = gadget.crossed(*pair)
        except (ValueError, gadgets.SpecsNotIndependent, gadgets.NotIsomorphic) as exc:
            raise CliError(str(exc)) from None
        if not args.stale_model:
            model = None
    text = io.dumps(g, model)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"{g.n} nodes, {g.edge_count} edges, digest {io.sha256(text)}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gisim", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def seed_opt(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--seed", type=int, default=None, help="defaults to $GISIM_SEED, else 0")

    def protocol_opts(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--protocol", required=True, choices=PROTOCOL_NAMES)
        sp.add_argument("--k", type=int, default=None, help="polygon vertex count (polygon-dmam)")

    classes = ("permutation", "trapezoid", "circle", "polygon")

    sp = sub.add_parser("generate", help="sample a connected instance with a proper model")
    sp.add_argument("--class", dest="cls", required=True, choices=classes)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--sparse", action="store_true", help="bounded-degree instances (for large n)")
    sp.add_argument("--out", default=None)
    seed_opt(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("run", help="run one protocol execution")
    protocol_opts(sp)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--prover", default="honest", help="honest or a strategy: " + ", ".join(STRATEGIES))
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--transcript", action="store_true", help="include the full transcript (json format)")
    seed_opt(sp)
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("soundness", help="rejection rates of cheating provers (CSV)")
    protocol_opts(sp)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--strategies", default="all", help="'all' or a comma list")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--out", default=None)
    seed_opt(sp)
    sp.set_defaults(func=cmd_soundness)

    sp = sub.add_parser("sweep", help="honest bandwidth over a range of n (CSV)")
    protocol_opts(sp)
    sp.add_argument("--n", required=True, help="comma list of sizes")
    sp.add_argument("--out", default=None)
    seed_opt(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("oracle", help="brute-force class membership")
    sp.add_argument("--class", dest="cls", required=True, choices=classes)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--budget", type=int, default=None, help="override the node budget")
    sp.add_argument("--show-model", action="store_true")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("gadget", help="build a Q_n or M_n gadget, optionally crossed")
    sp.add_argument("--family", required=True, choices=("Q", "M"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--cross", default=None, help="i,j (1-based pieces)")
    sp.add_argument("--stale-model", action="store_true", help="keep the uncrossed model in a crossed gadget")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_gadget)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except (CliError, ModelError, OSError) as exc:
        print(f"gisim: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
