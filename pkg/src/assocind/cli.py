"""``assocind`` command line: validate, index, charpoly, tensor, stab, verify.

Exit status: 0 when every check passes, 1 when a check fails, 2 for usage
or input errors.  ``--format machine`` prints a JSON document with sorted
keys whose bytes depend only on the command, the input files and the
``--seed/--prime/--trials`` values.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from pathlib import Path

import numpy as np

from . import charpoly as cp
from . import stab as st
from . import tensor as tn
from .algebra import (
    AlgebraError,
    AssociativityError,
    Functional,
    StructureConstants,
    commutator_matrix_at,
    find_unit,
    mat,
    mult_matrix_at,
    tensor_algebra,
)
from .algebra_file import AlgebraFileError, load_algebra, serialize_algebra
from .index import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    SYMBOLIC_INDEX_CAP,
    index_randomized,
    index_symbolic,
    sample_functional,
    trial_rng,
)
from .linalg import Matrix
from .report import FAIL, VerificationReport, jsonable
from .scalars.fields import DEFAULT_PRIME, QQ, PrimeField

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2

# stream offsets keep the functionals of different checks independent
_STREAM_DECOMPOSITION = 10_000
_STREAM_QUASI = 20_000
_STREAM_BASIS_CHANGE = 30_000
_STREAM_CAYLEY = 40_000


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    inputs: list
    seed: int
    prime: int
    trials: int
    results: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def add(self, report: VerificationReport, started: float | None = None):
        self.results.append(report)
        if started is not None:
            key = f"{len(self.results) - 1}:{report.tag}"
            self.timings[key] = round(time.perf_counter() - started, 6)

    @property
    def failed(self) -> bool:
        return any(r.status == FAIL for r in self.results)

    def to_json(self, timings=False) -> dict:
        doc = {"command": self.command, "inputs": self.inputs, "seed": self.seed,
               "prime": self.prime, "trials": self.trials,
               "results": [r.to_json() for r in self.results],
               "summary": {"total": len(self.results),
                           "failed": sum(r.status == FAIL for r in self.results)}}
        if timings:
            doc["timings"] = self.timings
        return jsonable(doc)


def emit_report(report: RunReport, fmt: str = "text", timings: bool = False) -> bytes:
    if fmt == "machine":
        return (json.dumps(report.to_json(timings), sort_keys=True, indent=1) + "\n").encode()
    lines = [f"command: {report.command}   seed={report.seed} prime={report.prime} "
             f"trials={report.trials}"]
    for inp in report.inputs:
        lines.append(f"input:   {inp['path']}  {inp['name']}  dim={inp['dim']}  "
                     f"sha256={inp['sha256'][:16]}")
    width = max([len(r.tag) for r in report.results] + [3])
    lines.append(f"{'tag':<{width}}  status        details")
    for r in report.results:
        d = json.dumps(jsonable(r.details), sort_keys=True)
        if len(d) > 160:
            d = d[:157] + "..."
        lines.append(f"{r.tag:<{width}}  {r.status:<12}  {d}")
    if timings or report.timings:
        total = sum(report.timings.values())
        lines.append(f"elapsed: {total:.3f}s")
    n_fail = sum(r.status == FAIL for r in report.results)
    lines.append(f"{len(report.results)} checks, {n_fail} failed")
    return ("\n".join(lines) + "\n").encode()


# -- subcommands ---------------------------------------------------------------


def _computed(tag, details):
    return VerificationReport(tag, True, details)


def cmd_validate(args, algs, rep):
    for sc in algs:
        t0 = time.perf_counter()
        unit = find_unit(sc)
        rep.add(_computed("def.associativity", {
            "algebra": sc.name, "dim": sc.dim,
            "unit": [str(c) for c in unit] if unit is not None else None,
            "commutative": sc.is_commutative()}), t0)


def cmd_index(args, algs, rep):
    for sc in algs:
        t0 = time.perf_counter()
        if args.mode == "symbolic":
            if sc.dim > SYMBOLIC_INDEX_CAP:
                raise UsageError(f"dimension {sc.dim} exceeds the symbolic cap {SYMBOLIC_INDEX_CAP}")
            r = index_symbolic(sc)
        else:
            r = index_randomized(sc, args.trials, args.seed, args.prime)
        rep.add(_computed("def.index", {"algebra": sc.name, **r.to_json()}), t0)


def cmd_charpoly(args, algs, rep):
    K = PrimeField(args.prime)
    for sc in algs:
        t0 = time.perf_counter()
        if args.symbolic:
            if sc.dim > cp.SYMBOLIC_CHARPOLY_CAP:
                raise UsageError(f"dimension {sc.dim} exceeds the symbolic charpoly cap "
                                 f"{cp.SYMBOLIC_CHARPOLY_CAP}")
            P = cp.charpoly_symbolic(sc)
            rep.add(_computed("def.charpoly", {"algebra": sc.name, "mode": "symbolic",
                                               "terms": P.to_json()}), t0)
        elif args.profile:
            prof = cp.multiplicity_profile(sc, args.trials, args.seed, args.prime)
            rep.add(_computed("thm.charpoly-divisibility-profile",
                              {"algebra": sc.name, "profile": list(prof.as_tuple()),
                               **prof.to_json()}), t0)
        else:
            F = sample_functional(sc.dim, K, args.seed, 0)
            P = cp.charpoly_at(sc, F)
            rep.add(_computed("def.charpoly", {"algebra": sc.name, "mode": "evaluated",
                                               "F": F.to_json(), "terms": P.to_json()}), t0)


def cmd_tensor(args, algs, rep):
    a, b = algs
    t0 = time.perf_counter()
    prod = tensor_algebra(a, b)
    text = serialize_algebra(prod)
    Path(args.output).write_text(text, encoding="utf-8")
    rep.add(_computed("def.tensor-algebra", {
        "dim": prod.dim, "name": prod.name, "output": str(args.output),
        "sha256": hashlib.sha256(text.encode()).hexdigest()}), t0)


def cmd_stab(args, algs, rep):
    for sc in algs:
        _stab_suite(sc, args, rep)


def cmd_verify(args, algs, rep):
    suites = ("tensor", "charpoly", "stab") if args.suite == "all" else (args.suite,)
    for suite in suites:
        if suite == "tensor":
            for a in algs:
                for b in algs:
                    _tensor_pair_suite(a, b, args, rep)
            for a in algs:
                t0 = time.perf_counter()
                rep.add(tn.two_dim_tensor_check(a, args.seed, args.trials, args.prime), t0)
                t0 = time.perf_counter()
                rep.add(tn.two_dim_tensor_rank_one_check(a, args.seed, args.trials, args.prime), t0)
        elif suite == "charpoly":
            for sc in algs:
                _charpoly_suite(sc, args, rep)
        else:
            for sc in algs:
                _stab_suite(sc, args, rep)


def _tensor_pair_suite(a, b, args, rep):
    K = PrimeField(args.prime)
    names = [a.name, b.name]
    t0 = time.perf_counter()
    rep.add(tn.convexity_check(a, b, args.seed, args.trials, args.prime), t0)
    for t in range(args.trials):
        t0 = time.perf_counter()
        f = sample_functional(a.dim, K, args.seed, _STREAM_DECOMPOSITION + 2 * t)
        g = sample_functional(b.dim, K, args.seed, _STREAM_DECOMPOSITION + 2 * t + 1)
        rep.add(tn.commutator_decomposition_check(a, b, f, g), t0)
        # matrix identities on the multiplication and bracket forms of the inputs
        A1, A2 = mult_matrix_at(a, f), mult_matrix_at(b, g)
        rep.add(tn.det_tensor_identity_check(A1, A2))
        B1, B2 = commutator_matrix_at(a, f), commutator_matrix_at(b, g)
        rec = tn.kernel_sum_dim(B1, A2, A1, B2)
        rep.add(VerificationReport("thm.kernel-sum", rec.achieved >= rec.bound,
                                   {"algebras": names, **rec.to_json()}))


def _random_element(dim, K, rng):
    return [K.random_element(rng) for _ in range(dim)]


def _is_matn(sc: StructureConstants):
    n = isqrt(sc.dim)
    return n if n * n == sc.dim and sc == mat(n) else None


def _charpoly_suite(sc, args, rep):
    K = PrimeField(args.prime)
    t0 = time.perf_counter()
    prof = cp.multiplicity_profile(sc, args.trials, args.seed, args.prime)
    finite = prof.m_lambda != cp.INFINITE
    ok = (prof.m_lambda == prof.m_mu and prof.m_sum >= prof.index
          and prof.m_lambda >= prof.dim_ker_A_generic) if finite else True
    rep.add(VerificationReport("thm.charpoly-divisibility", ok,
                               {"algebra": sc.name, **prof.to_json()}), t0)
    for t in range(args.trials):
        t0 = time.perf_counter()
        rng = trial_rng(args.seed, _STREAM_BASIS_CHANGE + t)
        F = Functional.random(sc.dim, K, rng)
        while True:
            C = Matrix([_random_element(sc.dim, K, rng) for _ in range(sc.dim)], K, convert=False)
            if C.rank() == sc.dim:
                break
        rep.add(cp.basis_change_check(sc, F, C), t0)
    if sc.unit is not None:
        for t in range(args.trials):
            t0 = time.perf_counter()
            rng = trial_rng(args.seed, _STREAM_QUASI + t)
            F = Functional.random(sc.dim, K, rng)
            while True:
                g = _random_element(sc.dim, K, rng)
                if sc.left_mult_matrix(g, K).rank() == sc.dim:
                    break
            rep.add(cp.quasi_invariance_check(sc, g, F), t0)
    else:
        rep.add(VerificationReport("thm.quasi-invariance", False,
                                   {"algebra": sc.name, "reason": "algebra has no unit"},
                                   applicable=False))
    n = _is_matn(sc)
    if n is not None:
        for t in range(args.trials):
            t0 = time.perf_counter()
            F = sample_functional(sc.dim, K, args.seed, t)
            Fmat = [list(F.coords[i * n:(i + 1) * n]) for i in range(n)]
            ok = cp.charpoly_at(sc, F) == cp.matn_charpoly_reference(n, Fmat, K)
            details = {"n": n}
            if not ok:
                details["F"] = F.to_json()
            rep.add(VerificationReport("thm.matn-charpoly", ok, details), t0)
    _cayley_on_tables(sc, args, rep)


def _cayley_on_tables(sc, args, rep):
    """Extended Cayley identity with ``A, B`` the multiplication table and its transpose
    at a small-integer functional, and ``C, D`` random complex matrices."""
    t0 = time.perf_counter()
    rng = np.random.default_rng([args.seed, _STREAM_CAYLEY])
    coords = tuple(Fraction(int(x)) for x in rng.integers(-5, 6, size=sc.dim))
    A = np.array(mult_matrix_at(sc, Functional(coords, QQ)).tolist(), dtype=float)
    m = min(sc.dim, 3)
    C, D = cp.random_complex_matrix(m, rng), cp.random_complex_matrix(m, rng)
    try:
        rep.add(cp.ext_cayley_check(A, A.T, C, D), t0)
    except cp.IllConditioned:
        rep.add(VerificationReport("thm.ext-cayley", False,
                                   {"algebra": sc.name,
                                    "reason": "multiplication table is singular at the sample"},
                                   applicable=False))


def _stab_suite(sc, args, rep):
    K = PrimeField(args.prime)
    index = index_randomized(sc, args.trials, args.seed, args.prime).index
    for t in range(args.trials):
        t0 = time.perf_counter()
        F = sample_functional(sc.dim, K, args.seed, t)
        data = st.stab_basis(sc, F)
        rep.add(st.qf_property_check(sc, F, data), t0)
    t0 = time.perf_counter()
    rep.add(st.agreement_check(sc, seed=args.seed, trials=args.trials, prime=args.prime), t0)
    t0 = time.perf_counter()
    data = st.generic_stabilizer(sc, index, args.trials, args.seed, args.prime)
    rep.add(VerificationReport("prop.stab-dim-index", data.dim == index,
                               {"algebra": sc.name, "stab_dim": data.dim, "index": index}), t0)
    if 4 * sc.dim <= st.MAX_TENSOR_DIM:
        t0 = time.perf_counter()
        rep.add(st.matN_tensor_index_check(sc, 2, args.seed, args.trials, args.prime), t0)


# -- argument handling ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--timings", action="store_true",
                        help="include per-check wall times in machine output")

    p = argparse.ArgumentParser(prog="assocind", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("validate", parents=[common], help="parse and check associativity")
    s.add_argument("files", nargs="+")
    s = sub.add_parser("index", parents=[common], help="index of the derived Lie algebra")
    s.add_argument("files", nargs="+")
    s.add_argument("--mode", choices=("randomized", "symbolic"), default="randomized")
    s = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial")
    s.add_argument("files", nargs="+")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--symbolic", action="store_true")
    g.add_argument("--profile", action="store_true")
    s = sub.add_parser("tensor", parents=[common], help="write the tensor product algebra")
    s.add_argument("files", nargs=2, metavar="FILE")
    s.add_argument("-o", "--output", required=True)
    s = sub.add_parser("stab", parents=[common], help="stabilizer and Q_F checks")
    s.add_argument("files", nargs="+")
    s = sub.add_parser("verify", parents=[common], help="run theorem checks on the inputs")
    s.add_argument("files", nargs="+")
    s.add_argument("--suite", choices=("tensor", "charpoly", "stab", "all"), default="all")
    return p


_COMMANDS = {"validate": cmd_validate, "index": cmd_index, "charpoly": cmd_charpoly,
             "tensor": cmd_tensor, "stab": cmd_stab, "verify": cmd_verify}


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.trials < 1:
        print("assocind: --trials must be at least 1", file=stderr)
        return EXIT_USAGE
    try:
        PrimeField(args.prime)
    except ValueError as exc:
        print(f"assocind: {exc}", file=stderr)
        return EXIT_USAGE
    algs, inputs = [], []
    for path in args.files:
        try:
            sc, digest = load_algebra(path)
        except OSError as exc:
            print(f"assocind: {path}: {exc.strerror}", file=stderr)
            return EXIT_USAGE
        except AssociativityError as exc:
            v = exc.violation
            print(f"assocind: {path}: not associative at (i, j, k) = ({v.i}, {v.j}, {v.k}): "
                  f"(e_i e_j) e_k = {[str(x) for x in v.lhs]}, "
                  f"e_i (e_j e_k) = {[str(x) for x in v.rhs]}", file=stderr)
            return EXIT_USAGE
        except (AlgebraFileError, AlgebraError) as exc:
            print(f"assocind: {path}: {exc}", file=stderr)
            return EXIT_USAGE
        if sc.name is None:
            sc.name = Path(path).stem
        algs.append(sc)
        inputs.append({"path": Path(path).name, "sha256": digest, "name": sc.name, "dim": sc.dim})
    rep = RunReport(args.command, inputs, args.seed, args.prime, args.trials)
    try:
        _COMMANDS[args.command](args, algs, rep)
    except UsageError as exc:
        print(f"assocind: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(emit_report(rep, args.format, args.timings))
    stdout.flush()
    return EXIT_CHECK_FAILED if rep.failed else EXIT_OK


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
