"""Command-line front end.

Exit codes: 0 success, 1 verification failed, 2 usage or parse error.
Spectral positions count distinct levels: "second excited" is level 2 even
when the ground level is degenerate.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from mmes import core, models, optimize, pauli, search, spectral


class UsageError(Exception):
    pass


def _g(x) -> str:
    return f"{x:.12g}"


def load_state(arg: str) -> core.PureState:
    if os.path.isfile(arg):
        return core.parse_state(Path(arg).read_text())
    return models.named_state(arg)


def load_hamiltonian(arg: str, n: int | None = None) -> pauli.PauliOperator:
    if os.path.isfile(arg):
        return pauli.parse_hamiltonian(Path(arg).read_text(), n)
    op = models.named_hamiltonian(arg)
    if n is not None and op.n != n:
        raise UsageError(f"dimension mismatch: {arg} acts on {op.n} qubits, state has {n}")
    return op


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args):
    state = load_state(args.state)
    table = core.purity_table(state)
    value = core.pme(state)
    floor = core.pme_lower_bound(state.n)
    perfect = core.is_perfect_mmes(state, args.tol)
    if args.csv:
        rows = ["bipartition,purity"] + [f"\"{p}\",{_g(v)}" for p, v in table.items()]
        rows.append(f"mean,{_g(value)}")
    else:
        rows = [f"{'bipartition':<14}purity"] + [f"{str(p):<14}{_g(v)}" for p, v in table.items()]
        rows += [f"{'pme':<14}{_g(value)}", f"{'bounds':<14}[{_g(floor)}, 1]",
                 f"{'verdict':<14}{'perfect MMES' if perfect else 'not a perfect MMES'}"]
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def cmd_build(args):
    _emit(pauli.format_hamiltonian(load_hamiltonian(args.ham, args.n)), args.out)
    return 0


def cmd_diag(args):
    op = load_hamiltonian(args.ham, args.n)
    spec = spectral.eigh(pauli.sum_matrix(op), args.tol)
    rows = ["index,eigenvalue,cluster"]
    rows += [f"{i},{_g(e)},{spec.level_of(i)}" for i, e in enumerate(spec.eigenvalues)]
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def cmd_verify(args):
    state = load_state(args.state)
    op = load_hamiltonian(args.ham, state.n)
    value, residual = spectral.eigenstate_check(op, state)
    ok = residual <= args.tol * max(1.0, spectral.operator_norm_bound(op))
    lines = [f"eigenvalue {_g(value)}", f"residual {residual:.3e}"]
    if ok:
        spec = spectral.eigh(pauli.sum_matrix(op))
        level, pos, degenerate = spectral.level_position(spec, value)
        lines += [f"level {level} of {spec.n_levels}", f"normalized_position {_g(pos)}",
                  f"degenerate {str(degenerate).lower()}"]
    lines.append("verdict " + ("eigenstate" if ok else "not an eigenstate"))
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def cmd_sweep(args):
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    rows = ["J,k,gs_energy,gs_pme,ghz_level,degenerate,ghz_degenerate"]
    for J in np.linspace(*args.j_range, args.steps):
        for k in np.linspace(*args.k_range, args.steps):
            f = models.hjk3_ground_facts(J, k)
            rows.append(",".join([_g(J), _g(k), _g(f.ground_energy), _g(f.gs_pme), str(f.ghz_level),
                                  str(f.ground_degenerate).lower(), str(f.ghz_degenerate).lower()]))
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def _family(args):
    if args.family == "hjk4":
        state = load_state(args.state or "m4")
        gens = (models.hjk4(1, 0), models.hjk4(0, 1))
    elif args.family == "hjk3":
        state = load_state(args.state or "g1plus")
        gens = (models.hjk3(1, 0), models.hjk3(0, 1))
    else:
        if not args.state:
            raise UsageError("--state is required for the stabilizer family")
        state = load_state(args.state)
        topo = pauli.Topology(args.topology, state.n)
        sb = search.stabilizer_search(state, pauli.candidate_local_terms(state.n, topo))
        return sb.family()
    if state.n != gens[0].n:
        raise UsageError(f"dimension mismatch: {args.family} acts on {gens[0].n} qubits")
    return search.CouplingFamily(state, gens)


def cmd_search(args):
    state = load_state(args.state)
    topo = pauli.Topology(args.topology, state.n)
    sb = search.stabilizer_search(state, pauli.candidate_local_terms(state.n, topo), args.cutoff)
    report = search.verify_basis(sb)
    print(f"candidates {len(sb.candidates)}")
    print(f"dimension {sb.dimension}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        manifest = ["index,file,eigenvalue,residual"]
        for i, text in enumerate(report.texts):
            name = f"basis_{i:03d}.ham"
            (out / name).write_text(text)
            manifest.append(f"{i},{name},{_g(report.eigenvalues[i])},{report.residuals[i]:.3e}")
        (out / "manifest.csv").write_text("\n".join(manifest) + "\n")
    return 0


def cmd_sample(args):
    fam = _family(args)
    rep = search.random_coupling_experiment(fam, args.samples, args.seed, workers=args.workers,
                                            keep_log=bool(args.log))
    _emit(f"{rep.CSV_HEADER}\n{rep.csv_row()}\n", args.out)
    if args.log:
        lg = rep.log
        rows = ["sample,level,normalized,degenerate"]
        rows += [f"{i},{lv},{_g(p)},{str(bool(d)).lower()}"
                 for i, (lv, p, d) in enumerate(zip(lg["level"], lg["normalized"], lg["degenerate"]))]
        Path(args.log).write_text("\n".join(rows) + "\n")
    return 0


def cmd_nogo(args):
    rep = search.nogo_probe(_family(args), args.samples, args.seed)
    _emit(f"{rep.CSV_HEADER}\n{rep.csv_row()}\n", args.out)
    return 0


def cmd_minimize(args):
    cfg = optimize.OptimizerConfig(restarts=args.restarts, seed=args.seed, anneal_steps=args.anneal_steps)
    state, value, trace = optimize.minimize_pme(args.n, cfg)
    _emit(core.format_state(state), args.out)
    print(f"pme {_g(value)}", file=sys.stderr)
    if args.trace:
        rows = ["iter,value"] + [f"{i},{_g(v)}" for i, v in trace]
        Path(args.trace).write_text("\n".join(rows) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mmes", description="Multipartite entanglement and local MMES Hamiltonians.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="per-bipartition purities, pme and perfect-MMES verdict")
    a.add_argument("--state", required=True, help="state file or name (ghz3, g1plus..g4minus, m4, m5)")
    a.add_argument("--csv", action="store_true")
    a.add_argument("--tol", type=float, default=1e-10)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("build", help="write a named Hamiltonian in the text format")
    b.add_argument("--ham", required=True, help="hjk3:J,k, hjk4:J,k or a Hamiltonian file")
    b.add_argument("--n", type=int)
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    d = sub.add_parser("diag", help="spectrum as CSV; cluster is the distinct-level index")
    d.add_argument("--ham", required=True)
    d.add_argument("--n", type=int)
    d.add_argument("--tol", type=float, default=spectral.DEGENERACY_TOL)
    d.add_argument("--out")
    d.set_defaults(func=cmd_diag)

    v = sub.add_parser("verify", help="check that a state is an eigenstate; report its level")
    v.add_argument("--ham", required=True)
    v.add_argument("--state", required=True)
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="ground-state facts of hjk3 over a (J, k) grid")
    s.add_argument("--j-range", type=float, nargs=2, default=(-2.0, 2.0), metavar=("LO", "HI"))
    s.add_argument("--k-range", type=float, nargs=2, default=(-2.0, 2.0), metavar=("LO", "HI"))
    s.add_argument("--steps", type=int, default=50)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    se = sub.add_parser("search", help="local Hamiltonians admitting the state as an eigenstate")
    se.add_argument("--state", required=True)
    se.add_argument("--topology", choices=("ring", "chain", "complete"), default="ring")
    se.add_argument("--cutoff", type=float, default=search.SVD_CUTOFF)
    se.add_argument("--out", help="directory for basis_###.ham files and manifest.csv")
    se.set_defaults(func=cmd_search)

    for name, func, helptext in (("sample", cmd_sample, "random-coupling spectral position experiment"),
                                 ("nogo", cmd_nogo, "count samples where the state is a ground state")):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("--family", choices=("stabilizer", "hjk3", "hjk4"), default="stabilizer")
        q.add_argument("--state")
        q.add_argument("--topology", choices=("ring", "chain", "complete"), default="ring")
        q.add_argument("--samples", type=int, required=True)
        q.add_argument("--seed", type=int, required=True)
        q.add_argument("--out")
        if name == "sample":
            q.add_argument("--workers", type=int, default=1)
            q.add_argument("--log", help="per-sample CSV log")
        q.set_defaults(func=func)

    m = sub.add_parser("minimize", help="minimize pme over n-qubit pure states")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--restarts", type=int)
    m.add_argument("--anneal-steps", type=int, default=0)
    m.add_argument("--out", help="best state in the state file format")
    m.add_argument("--trace", help="CSV of iter,value")
    m.set_defaults(func=cmd_minimize)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"mmes {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
