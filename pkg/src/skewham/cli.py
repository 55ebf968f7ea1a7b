"""Command-line front end and the perturbation experiment runner.

The experiment: draw a random orthonormal Lagrangian basis, take its
minimum-norm realizer, perturb it by beta times a normal random matrix,
rebuild the Krylov sequence of the perturbed matrix, isotropize it, and
fit the nearest realizer of the isotropized basis. Each trial emits one
CSV row of deviation metrics.

Exit codes: 0 success, 1 validation or usage error, 2 I/O error.
"""

import argparse
import struct
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import IsotropyViolation, LinearDependenceError
from .analysis import (
    REPORT_HEADER,
    VerificationReport,
    nilpotency_index,
    verify_dimension,
    verify_frobenius_min,
    verify_norm_equality,
    verify_projection_identity,
    verify_spectral_min,
)
from .lagrangian import (
    OrderedBasis,
    is_isotropic,
    isotropize,
    random_lagrangian_onb,
    subspace_gap,
)
from .linalg import (
    DEFAULT_TOL,
    apply_j,
    format_matrix,
    frobenius_norm,
    is_skew_hamiltonian,
    load_matrix,
    numerical_rank,
    save_matrix,
    star_adjoint,
)
from .realization import (
    SkewParam,
    SpectrumSpec,
    family_element,
    min_norm_realizer,
    nearest_realizer,
    nearest_realizer_with_spectrum,
    realization_family,
    realizer_with_spectrum,
)

CSV_HEADER = (
    "n,beta,trial,rel_dist_H_A,skewham_dev_A,skewham_dev_H,"
    "iso_dev_X,iso_dev_Y,gap,cond_XL,status"
)

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep grid: subspace sizes, perturbation magnitudes, trials per
    cell, base seed, and the CSV output path."""

    n_values: tuple
    beta_values: tuple
    trials: int
    seed: int
    out: str

    def __post_init__(self):
        n_values = tuple(int(v) for v in self.n_values)
        beta_values = tuple(float(b) for b in self.beta_values)
        if not n_values or not beta_values:
            raise ValueError("size and beta lists must be nonempty")
        if any(v < 1 for v in n_values):
            raise ValueError("subspace sizes must be positive")
        if any(b < 0 for b in beta_values):
            raise ValueError("beta must be nonnegative")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        object.__setattr__(self, "n_values", n_values)
        object.__setattr__(self, "beta_values", beta_values)


@dataclass(frozen=True)
class ExperimentRecord:
    """One trial's metrics; all metric fields are None when status is
    not "ok" (the trial broke down during isotropization)."""

    n: int
    beta: float
    trial: int
    rel_dist_H_A: float
    skewham_dev_A: float
    skewham_dev_H: float
    iso_dev_X: float
    iso_dev_Y: float
    gap: float
    cond_XL: float
    status: str

    def csv_row(self):
        metrics = (
            self.rel_dist_H_A,
            self.skewham_dev_A,
            self.skewham_dev_H,
            self.iso_dev_X,
            self.iso_dev_Y,
            self.gap,
            self.cond_XL,
        )
        cells = ["%d" % self.n, "%.17g" % self.beta, "%d" % self.trial]
        cells += ["" if v is None else "%.17g" % v for v in metrics]
        cells.append(self.status)
        return ",".join(cells)


def trial_seed(base_seed, n, beta, trial):
    """Per-trial seed hashed from the cell coordinates, so results do not
    depend on the execution schedule."""
    beta_bits = struct.unpack("<Q", struct.pack("<d", float(beta)))[0]
    return np.random.SeedSequence(
        [int(base_seed) & _MASK64, int(n), beta_bits, int(trial)]
    )


def run_trial(n, beta, seed, trial=0):
    """Run one perturbation trial; deterministic in (n, beta, seed)."""
    n = int(n)
    beta = float(beta)
    if n < 2:
        raise ValueError("n must be at least 2")
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    rng = np.random.default_rng(seed)
    basis = random_lagrangian_onb(n, rng)
    center = min_norm_realizer(basis)
    a = center + beta * rng.standard_normal((2 * n, 2 * n))

    x = np.empty((2 * n, n))
    x[:, 0] = basis.vector(1)
    for k in range(1, n):
        x[:, k] = a @ x[:, k - 1]

    try:
        iso = isotropize(x)
        h = nearest_realizer(iso, a)
    except (LinearDependenceError, IsotropyViolation):
        return ExperimentRecord(
            n=n, beta=beta, trial=trial, rel_dist_H_A=None, skewham_dev_A=None,
            skewham_dev_H=None, iso_dev_X=None, iso_dev_Y=None, gap=None,
            cond_XL=None, status="fail",
        )

    fro_a = frobenius_norm(a)
    fro_h = frobenius_norm(h)
    y = iso.matrix
    return ExperimentRecord(
        n=n,
        beta=beta,
        trial=trial,
        rel_dist_H_A=frobenius_norm(h - a) / fro_a,
        skewham_dev_A=frobenius_norm(a - star_adjoint(a)) / fro_a,
        skewham_dev_H=0.0 if fro_h == 0.0 else
            frobenius_norm(h - star_adjoint(h)) / fro_h,
        iso_dev_X=frobenius_norm(x.T @ apply_j(x)) / frobenius_norm(x.T @ x),
        iso_dev_Y=frobenius_norm(y.T @ apply_j(y)) / frobenius_norm(y.T @ y),
        gap=subspace_gap(x, y),
        cond_XL=float(np.linalg.cond(x[:, : n - 1])),
        status="ok",
    )


def run_sweep(cfg, workers=1):
    """Run the whole grid and write one CSV row per trial, ordered by
    (n, beta, trial). Returns the records in file order."""
    out = open(cfg.out, "w")
    try:
        cells = [
            (n, beta, t)
            for n in sorted(set(cfg.n_values))
            for beta in sorted(set(cfg.beta_values))
            for t in range(cfg.trials)
        ]

        def one(cell):
            n, beta, t = cell
            return run_trial(n, beta, trial_seed(cfg.seed, n, beta, t), trial=t)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                records = list(pool.map(one, cells))
        else:
            records = [one(cell) for cell in cells]

        out.write(CSV_HEADER + "\n")
        for record in records:
            out.write(record.csv_row() + "\n")
    finally:
        out.close()
    return records


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; route that to code 1.
    def error(self, message):
        raise _UsageError("%s\n%s" % (self.format_usage().rstrip(), message))


class _UsageError(Exception):
    pass


def _emit(matrix, out):
    if out:
        save_matrix(out, matrix)
    else:
        sys.stdout.write(format_matrix(matrix))


def _load_basis(path):
    return OrderedBasis(load_matrix(path))


def _parse_eigenvalues(text):
    try:
        values = [complex(tok.strip()) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(
            "bad eigenvalue list %r; expected comma-separated values "
            "like 1,-1,2+3j,2-3j" % text
        )
    if not values:
        raise ValueError("eigenvalue list is empty")
    return values


def _cmd_realize(args):
    _emit(min_norm_realizer(_load_basis(args.basis)), args.out)
    return 0


def _cmd_element(args):
    basis = _load_basis(args.basis)
    m = load_matrix(args.param)
    defect = float(np.linalg.norm(m + m.T))
    if defect > DEFAULT_TOL.rel * max(1.0, float(np.linalg.norm(m))):
        raise ValueError(
            "parameter matrix is not skew-symmetric (defect %.3e)" % defect
        )
    fam = realization_family(basis)
    _emit(family_element(fam, SkewParam(m)), args.out)
    return 0


def _cmd_spectrum(args):
    basis = _load_basis(args.basis)
    spec = SpectrumSpec.from_roots(_parse_eigenvalues(args.eigenvalues))
    _emit(realizer_with_spectrum(basis, spec), args.out)
    return 0


def _cmd_nearest(args):
    basis = _load_basis(args.basis)
    a = load_matrix(args.matrix)
    if args.spectrum:
        spec = SpectrumSpec.from_roots(_parse_eigenvalues(args.spectrum))
        h = nearest_realizer_with_spectrum(basis, spec, a)
    else:
        h = nearest_realizer(basis, a)
    _emit(h, args.out)
    return 0


def _cmd_check(args):
    m = load_matrix(args.path)
    if m.shape[0] == m.shape[1] and m.shape[0] % 2 == 0:
        result = is_skew_hamiltonian(m)
        print(
            "skew-hamiltonian: %s (defect %.3e)"
            % ("yes" if result.passed else "no", result.defect)
        )
        return 0 if result.passed else 1
    if m.shape[0] % 2 or m.shape[1] > m.shape[0] // 2:
        raise ValueError(
            "shape %s is neither a 2n x 2n operator nor a 2n x k basis "
            "with k <= n" % (m.shape,)
        )
    iso = is_isotropic(m)
    independent = numerical_rank(m) == m.shape[1]
    print("isotropic: %s (defect %.3e)" % ("yes" if iso.passed else "no", iso.defect))
    print("independent columns: %s" % ("yes" if independent else "no"))
    return 0 if iso.passed and independent else 1


def _cmd_experiment(args):
    cfg = ExperimentConfig(
        n_values=tuple(args.n),
        beta_values=tuple(args.beta),
        trials=args.trials,
        seed=args.seed,
        out=args.out,
    )
    records = run_sweep(cfg, workers=args.workers)
    failed = sum(1 for r in records if r.status != "ok")
    print("wrote %d rows to %s (%d failed)" % (len(records), cfg.out, failed))
    return 0


def _mixed_basis(onb, rng):
    # Recombine an orthonormal basis with a well-conditioned matrix to get
    # a non-orthonormal basis of the same subspace.
    n = len(onb)
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return OrderedBasis(onb.matrix @ (q * rng.uniform(0.5, 2.0, size=n)))


def _verify_nilpotency(basis, seed):
    index = nilpotency_index(min_norm_realizer(basis))
    defect = 0.0 if index == len(basis) else float("inf")
    return VerificationReport(
        name="nilpotency", n=basis.n, seed=seed, defect=defect,
        threshold=1.0, passed=defect <= 1.0, trials=0,
    )


_SUITES = {
    "frobenius": lambda b, s, t: verify_frobenius_min(b, trials=t, seed=s),
    "spectral": lambda b, s, t: verify_spectral_min(b, trials=t, seed=s),
    "dimension": lambda b, s, t: verify_dimension(b, seed=s),
    "projection": lambda b, s, t: verify_projection_identity(b, seed=s),
    "norm-equality": lambda b, s, t: verify_norm_equality(b, seed=s),
    "nilpotency": lambda b, s, t: _verify_nilpotency(b, s),
}

_ORTHONORMAL_ONLY = {"projection", "nilpotency"}


def _cmd_verify(args):
    names = sorted(_SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for n in args.sizes:
        if n < 1:
            raise ValueError("sizes must be positive")
        for i in range(args.count):
            seed_seq = np.random.SeedSequence([args.seed & _MASK64, n, i])
            rng = np.random.default_rng(seed_seq)
            onb = random_lagrangian_onb(n, rng)
            bases = [onb]
            if any(name not in _ORTHONORMAL_ONLY for name in names):
                bases.append(_mixed_basis(onb, rng))
            for name in names:
                targets = [onb] if name in _ORTHONORMAL_ONLY else bases
                for basis in targets:
                    reports.append(_SUITES[name](basis, args.seed + i, args.trials))
    print(REPORT_HEADER)
    for report in reports:
        print(report.csv_row())
    return 0 if all(r.passed for r in reports) else 1


def _build_parser():
    parser = _Parser(
        prog="skewham",
        description="Skew-Hamiltonian realizations of Lagrangian subspaces "
        "as Krylov spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("realize", help="minimum-norm realizer of a basis file")
    p.add_argument("basis", help="basis file, 2n x k matrix, columns are vectors")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("element", help="family element for a skew parameter")
    p.add_argument("basis")
    p.add_argument("param", help="(n+1) x (n+1) skew-symmetric matrix file")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_element)

    p = sub.add_parser("spectrum", help="realizer with prescribed eigenvalues")
    p.add_argument("basis")
    p.add_argument("eigenvalues", help="comma-separated, e.g. 1,-1,2+3j,2-3j")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("nearest", help="family element nearest to a matrix")
    p.add_argument("basis")
    p.add_argument("matrix", help="2n x 2n matrix file")
    p.add_argument("--spectrum", help="restrict to a prescribed-spectrum family")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_nearest)

    p = sub.add_parser("check", help="report on a matrix or basis file")
    p.add_argument("path", help="square file: skew-Hamiltonian check; "
                   "2n x k file: isotropy check")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("experiment", help="run the perturbation sweep")
    p.add_argument("--n", nargs="+", type=int, default=[4, 8, 16],
                   help="subspace sizes (default: 4 8 16)")
    p.add_argument("--beta", nargs="+", type=float,
                   default=[1e-4, 1e-3, 1e-2],
                   help="perturbation magnitudes (default: 1e-4 1e-3 1e-2)")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="experiment.csv")
    p.add_argument("--workers", type=int, default=1,
                   help="concurrent trials (result is schedule independent)")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("verify", help="run a verifier suite")
    p.add_argument("--suite", required=True,
                   choices=sorted(_SUITES) + ["all"])
    p.add_argument("--sizes", nargs="+", type=int, default=[1, 2, 3, 4, 8])
    p.add_argument("--count", type=int, default=3,
                   help="random bases per size (default: 3)")
    p.add_argument("--trials", type=int, default=200,
                   help="draws per sampled check (default: 200)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    return parser


def cli_dispatch(argv):
    """Parse argv (without the program name) and run one subcommand."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, np.linalg.LinAlgError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("i/o error: %s" % exc, file=sys.stderr)
        return 2


def main():
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
