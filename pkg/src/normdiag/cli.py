"""Command line driver.

Exit status: 0 when every check passes or the verdict raises no obstruction,
1 when the analysis finds an obstruction or counterexample, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import io as nio
from .counterexample import kadison_classifier, three_point_counterexample
from .geometry import GeometryError, VertexSet
from .matrices import check_expectation_trace_identity, is_projection, pair_index, random_pair
from .obstruction import MissingVertexError, Verdict, build_lattice, obstruction_verdict
from .orthostochastic import NotDoublyStochasticError, orthostochastic_test_3x3
from .schur_horn import DiagonalObstruction, DiagonalRangeError, realize_diagonal_01
from .sequences import SequenceError
from .xdecomp import decompose, simplex_constant, verify_weight_summability

EXIT_OK, EXIT_FINDING, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    vertices: Optional[str] = None
    sequence: Optional[str] = None
    matrix: Optional[str] = None
    diagonal: Optional[str] = None
    out: Optional[str] = None
    mode: str = "exact"
    seed: int = 0
    trials: int = 100
    n: int = 8
    tol: float = 1e-6
    workers: int = 1


def _header(command: str) -> dict:
    return {"schema": nio.SCHEMA_VERSION, "command": command}


def _need(value, flag):
    if value is None:
        raise nio.InputError(f"missing required flag {flag}")
    return value


def _load_inputs(cfg: RunConfig):
    X = nio.vertices_from_json(nio.read_json(_need(cfg.vertices, "--vertices")), exact=cfg.mode == "exact")
    seq = nio.sequence_from_json(nio.read_json(_need(cfg.sequence, "--sequence")), X)
    return X, seq


def cmd_gamma(cfg: RunConfig):
    X, seq = _load_inputs(cfg)
    L = build_lattice(X)
    rep = obstruction_verdict(seq, L)
    out = _header("gamma")
    out.update(rep.to_json())
    out["lattice"] = L.to_json()
    out["vertices_in_tail"] = list(seq.vertices_in_tail())
    code = EXIT_FINDING if rep.verdict == Verdict.OBSTRUCTED else EXIT_OK
    return out, code


def cmd_lattice(cfg: RunConfig):
    X = nio.vertices_from_json(nio.read_json(_need(cfg.vertices, "--vertices")))
    L = build_lattice(X)
    out = _header("lattice")
    out.update(L.to_json())
    out["verified"] = L.verify()
    return out, EXIT_OK


def cmd_decompose(cfg: RunConfig):
    X, seq = _load_inputs(cfg)
    dec = decompose(seq)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "re", "im"] + [f"e{k}" for k in range(X.n)])
    for n, (a, row) in enumerate(zip(seq.head, dec.head_weights)):
        w.writerow([n, str(a.re), str(a.im)] + [str(x) for x in row])
    C = simplex_constant(X)
    rep = verify_weight_summability(dec, C)
    return buf.getvalue(), EXIT_OK if rep.holds else EXIT_FINDING


def _index_trial(args):
    n, entropy, index, tol = args
    rng = np.random.default_rng(np.random.SeedSequence(entropy, spawn_key=(index,)))
    pair, expected = random_pair(n, rng, planted=bool(index % 2))
    rep = pair_index(pair, tol)
    ok = rep.holds and (rep.dim_m_cap_nperp, rep.dim_n_cap_mperp) == expected
    return index, ok, rep.to_json()


def cmd_verify_index(cfg: RunConfig):
    jobs = [(cfg.n, cfg.seed, i, cfg.tol) for i in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_index_trial, jobs, chunksize=16))
    else:
        results = [_index_trial(j) for j in jobs]
    results.sort(key=lambda r: r[0])
    passed = sum(1 for _, ok, _ in results if ok)
    out = _header("verify-index")
    out.update(
        n=cfg.n,
        trials=cfg.trials,
        seed=cfg.seed,
        tol=cfg.tol,
        passed=passed,
        failures=[dict(trial=i, **r) for i, ok, r in results if not ok],
    )
    return out, EXIT_OK if passed == cfg.trials else EXIT_FINDING


def cmd_realize(cfg: RunConfig):
    if cfg.diagonal is not None:
        d = [x for x in cfg.diagonal.split(",") if x.strip()]
    else:
        obj = nio.read_json(_need(cfg.matrix, "--diagonal or --input"))
        d = obj["diagonal"] if isinstance(obj, dict) else obj
    res = realize_diagonal_01(d, exact=cfg.mode == "exact")
    out = _header("realize")
    if isinstance(res, DiagonalObstruction):
        out.update(
            realizable=False,
            diagonal=[str(x) for x in res.diagonal],
            total=str(res.total),
            defect=str(res.defect),
        )
        return out, EXIT_FINDING
    P = res.projection
    diag_ok = (
        P.diagonal() == list(res.diagonal)
        if cfg.mode == "exact"
        else bool(np.allclose(np.diag(P).real, [float(x) for x in res.diagonal], atol=1e-12))
    )
    trace_rep = check_expectation_trace_identity(P, validate=False)
    out.update(
        realizable=True,
        diagonal=[str(x) for x in res.diagonal],
        rank=res.rank,
        rotations=[{"i": r.i, "j": r.j, "cos2": str(r.cos2)} for r in res.rotations],
        projection=nio.matrix_to_json(P),
        checks={
            "projection": bool(is_projection(P)),
            "diagonal": bool(diag_ok),
            "trace_identity": bool(trace_rep.holds),
        },
    )
    ok = all(out["checks"].values())
    return out, EXIT_OK if ok else EXIT_FINDING


def cmd_orthostochastic(cfg: RunConfig):
    A = nio.matrix_from_json(nio.read_json(_need(cfg.matrix, "--matrix")))
    for i, r in enumerate(A):
        for j, x in enumerate(r):
            if not x.is_real():
                raise nio.InputError(f"matrix[{i}][{j}] must be real")
    A = [[x.re for x in r] for r in A]
    v = orthostochastic_test_3x3(A)
    out = _header("orthostochastic")
    out["orthostochastic"] = v.orthostochastic
    if v.orthostochastic:
        out["witness"] = nio.matrix_to_json(np.round(v.witness, 15))
        out["unitarity_defect_ok"] = v.unitarity_defect() <= 1e-10
        out["modulus_defect_ok"] = v.modulus_defect(A) <= 1e-10
        return out, EXIT_OK
    out["violated_rows"] = list(v.violation.rows)
    out["row_products"] = [str(x) for x in v.violation.products]
    out["row_moduli"] = [str(x) for x in v.violation.moduli]
    return out, EXIT_FINDING


def cmd_counterexample(cfg: RunConfig):
    rep = three_point_counterexample()
    out = _header("counterexample")
    out.update(rep.to_json())
    return out, EXIT_FINDING if not rep.realizable else EXIT_OK


def cmd_kadison(cfg: RunConfig):
    X = VertexSet.of(0, 1)
    seq = nio.sequence_from_json(nio.read_json(_need(cfg.sequence, "--sequence")), X)
    rep = kadison_classifier(seq)
    out = _header("kadison")
    out.update(
        a=str(rep.a),
        b=str(rep.b),
        classification=rep.classification.value,
        integer=rep.integer,
        defect=None if rep.defect is None else str(rep.defect),
        obstruction_verdict=rep.obstruction.value,
        agrees=rep.agrees,
    )
    return out, EXIT_OK if rep.integer is not None else EXIT_FINDING


COMMANDS = {
    "gamma": cmd_gamma,
    "lattice": cmd_lattice,
    "decompose": cmd_decompose,
    "verify-index": cmd_verify_index,
    "realize": cmd_realize,
    "orthostochastic": cmd_orthostochastic,
    "counterexample": cmd_counterexample,
    "kadison": cmd_kadison,
}


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    handler = COMMANDS.get(cfg.command)
    try:
        if handler is None:
            raise nio.InputError(f"unknown subcommand {cfg.command!r}")
        out, code = handler(cfg)
    except (nio.InputError, GeometryError, SequenceError, DiagonalRangeError,
            NotDoublyStochasticError) as exc:
        err = _header(cfg.command)
        err["error"] = str(exc)
        if isinstance(exc, MissingVertexError):
            err["missing_vertices"] = exc.missing
        print(nio.dumps(err), end="", file=sys.stderr)
        return EXIT_INPUT
    text = out if isinstance(out, str) else nio.dumps(out)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="normdiag", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--mode", choices=("exact", "float"), default="exact")
        return sp

    for name in ("gamma", "decompose"):
        sp = common(sub.add_parser(name))
        sp.add_argument("--vertices", required=True)
        sp.add_argument("--sequence", required=True)
    common(sub.add_parser("lattice")).add_argument("--vertices", required=True)
    sp = common(sub.add_parser("verify-index"))
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--workers", type=int, default=1)
    sp = common(sub.add_parser("realize"))
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--diagonal", help='comma separated rationals, e.g. "1/2,1/2"')
    g.add_argument("--input", dest="matrix", help='JSON list (or {"diagonal": [...]})')
    common(sub.add_parser("orthostochastic")).add_argument("--matrix", required=True)
    common(sub.add_parser("counterexample"))
    common(sub.add_parser("kadison")).add_argument("--sequence", required=True)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__})
    if cfg.trials < 0 or cfg.n < 1 or cfg.workers < 1:
        print("--trials must be >= 0, --n and --workers >= 1", file=sys.stderr)
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
