"""Oracle validation suites.

Each suite returns a list of :class:`Check` records comparing a measured
error against a threshold. Every random draw comes from a fixed seed and
reports carry no timings, so rendering the same suite twice gives the same
bytes.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .analytic import (
    coherent_mode_tomograms,
    coherent_tomogram_generating,
    const_field_tomogram,
    evaluate_gaussian,
    var_field_tomogram,
)
from .core import (
    CoherentLabel,
    FockLabel,
    Grid1D,
    Grid2D,
    InvalidArgumentError,
    TwoModeFrame,
    rescale_two_mode,
)
from .drive import SinusoidalDrive, TrajectoryPoint, ZeroDrive, integrate_trajectory
from .frft import (
    DEFAULT_X_GRID,
    NumericTomogram1D,
    TomogramSlice2D,
    check_homogeneity,
    marginal,
    moments,
    tomogram_1d,
    tomogram_2d,
)
from .hermite import fock_quantum_numbers, fock_tomogram, hermite_2var
from .reconstruction import fidelity_pure, fidelity_tomographic, reconstruct_density_1d
from .wavefunctions import (
    LadderKind,
    apply_angular_momentum,
    apply_hamiltonian,
    apply_ladder,
    coherent_wavefunction_const,
    coherent_wavefunction_var,
    fock_wavefunction_const,
    ground_state,
    mode_coherent_wavefunction,
    relative_residual,
)

__all__ = ["Check", "SUITES", "SUITE_ORDER", "run_suite", "clear_caches", "render_report", "report_json",
           "sample_frame", "sample_label", "VALIDATION_DRIVE"]

PSI_GRID = Grid2D.square(12.0, 256)
MODE_GRID = Grid1D(-12.0, 12.0, 256)
VALIDATION_DRIVE = SinusoidalDrive(0.2, 0.1, 0.7, 0.3)
LABEL_RADIUS = 1.5


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    value: float
    threshold: float
    passed: bool
    relation: str = "<"

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.criterion:2d} {self.name:<44s} "
                f"{self.value:.3e} {self.relation} {self.threshold:.1e}")


def _lt(criterion, name, value, threshold) -> Check:
    value = float(value)
    return Check(criterion, name, value, threshold, bool(value < threshold), "<")


def _ge(criterion, name, value, threshold) -> Check:
    value = float(value)
    return Check(criterion, name, value, threshold, bool(value >= threshold), ">=")


def sample_frame(rng: np.random.Generator) -> TwoModeFrame:
    """Random two-mode frame with scales in [0.6, 1] and uniform angles."""
    th = rng.uniform(0, 2 * math.pi, 2)
    r = rng.uniform(0.6, 1.0, 2)
    return TwoModeFrame.from_values(r[0] * math.cos(th[0]), r[0] * math.sin(th[0]),
                                    r[1] * math.cos(th[1]), r[1] * math.sin(th[1]))


def sample_label(rng: np.random.Generator, radius: float = LABEL_RADIUS) -> CoherentLabel:
    """Uniform draw from the disks |alpha|, |beta| <= radius."""
    rad = radius * np.sqrt(rng.uniform(0, 1, 2))
    ang = rng.uniform(0, 2 * math.pi, 2)
    a, b = rad * np.exp(1j * ang)
    return CoherentLabel(complex(a), complex(b))


def _x_mesh():
    X = DEFAULT_X_GRID.points
    return np.meshgrid(X, X, indexing="ij")


def _slice_stats(s: TomogramSlice2D, analytic: np.ndarray) -> dict:
    da = DEFAULT_X_GRID.spacing ** 2
    out = {
        "dev": float(np.max(np.abs(s.values - analytic))),
        "norm_numeric": abs(s.normalization() - 1),
        "norm_analytic": abs(float(np.sum(analytic) * da) - 1),
        "var": 0.0,
    }
    for axis, f in ((0, s.frame.f1), (1, s.frame.f2)):
        _, var = moments(marginal(s, axis))
        out["var"] = max(out["var"], abs(var - f.quadrature_variance))
    return out


@lru_cache(maxsize=None)
def _const_runs() -> tuple:
    rng = np.random.default_rng(1001)
    X1, X2 = _x_mesh()
    stats = []
    for _ in range(20):
        label = sample_label(rng)
        psi = coherent_wavefunction_const(label, PSI_GRID)
        for _ in range(5):
            frame = sample_frame(rng)
            s = tomogram_2d(psi, frame)
            stats.append(_slice_stats(s, evaluate_gaussian(const_field_tomogram(label, frame), X1, X2)))
    return tuple(stats)


@lru_cache(maxsize=None)
def _trajectory():
    return integrate_trajectory(VALIDATION_DRIVE, 0j, 0j, 4 * math.pi, 1e-3)


def _trajectory_nodes(count: int = 5) -> list[int]:
    n = len(_trajectory())
    return [int(i) for i in np.linspace(2, n - 3, count)]


@lru_cache(maxsize=None)
def _var_runs() -> tuple:
    rng = np.random.default_rng(2002)
    X1, X2 = _x_mesh()
    traj = _trajectory()
    stats = []
    for i in _trajectory_nodes():
        p = traj.node(i)
        for _ in range(10):
            label = sample_label(rng)
            frame = sample_frame(rng)
            psi = coherent_wavefunction_var(label, p, PSI_GRID)
            s = tomogram_2d(psi, frame)
            stats.append(_slice_stats(s, evaluate_gaussian(var_field_tomogram(label, p, frame), X1, X2)))
    return tuple(stats)


def _worst(stats, key) -> float:
    return max(s[key] for s in stats)


# -- suites -----------------------------------------------------------------------

def suite_gaussian_oracle() -> list[Check]:
    return [_lt(1, "constant field: FRFT vs closed form", _worst(_const_runs(), "dev"), 1e-6)]


def suite_varying_field() -> list[Check]:
    return [_lt(2, "driven field: FRFT vs closed form", _worst(_var_runs(), "dev"), 1e-4)]


@lru_cache(maxsize=None)
def _fock_norms() -> tuple:
    rng = np.random.default_rng(3003)
    X1, X2 = _x_mesh()
    da = DEFAULT_X_GRID.spacing ** 2
    p_var = _trajectory().node(_trajectory_nodes()[2])
    worst, most_negative = 0.0, 0.0
    for n1, n2 in itertools.product(range(5), repeat=2):
        if n1 + n2 > 4:
            continue
        for p in (TrajectoryPoint.rest(), p_var):
            w = fock_tomogram(FockLabel(n1, n2), p, sample_frame(rng), X1, X2)
            worst = max(worst, abs(float(np.sum(w) * da) - 1))
            most_negative = min(most_negative, float(np.min(w)))
    return worst, most_negative


def suite_normalization() -> list[Check]:
    runs = _const_runs() + _var_runs()
    return [
        _lt(3, "coherent FRFT tomograms integrate to 1", _worst(runs, "norm_numeric"), 1e-4),
        _lt(3, "closed-form Gaussians integrate to 1", _worst(runs, "norm_analytic"), 1e-8),
        _lt(3, "Fock tomograms n1+n2<=4 integrate to 1", _fock_norms()[0], 1e-4),
    ]


def suite_homogeneity() -> list[Check]:
    rng = np.random.default_rng(4004)
    p = _trajectory().node(_trajectory_nodes()[1])
    states = [coherent_wavefunction_const(sample_label(rng), PSI_GRID) for _ in range(3)]
    states.append(coherent_wavefunction_var(sample_label(rng), p, PSI_GRID))
    states.append(fock_wavefunction_const(FockLabel(1, 1), PSI_GRID))
    worst = 0.0
    for psi in states:
        frame = sample_frame(rng)
        for lam in (-2.0, -0.5, 0.5, 3.0):
            worst = max(worst, check_homogeneity(psi, frame, lam))
    closed = 0.0
    probe = np.linspace(-6.0, 6.0, 49)
    P1, P2 = np.meshgrid(probe, probe, indexing="ij")
    for _ in range(5):
        label, frame = sample_label(rng), sample_frame(rng)
        ref = evaluate_gaussian(const_field_tomogram(label, frame), P1, P2)
        for lam in (-2.0, -0.5, 0.5, 3.0):
            got = evaluate_gaussian(const_field_tomogram(label, rescale_two_mode(lam, frame)),
                                    lam * P1, lam * P2)
            closed = max(closed, float(np.max(np.abs(got - ref / lam ** 2))))
    return [_lt(4, "w(lam X, lam frame) = w(X, frame)/lam^2", worst, 1e-6),
            _lt(4, "same, closed-form Gaussian", closed, 1e-6)]


def suite_variance() -> list[Check]:
    return [
        _lt(5, "variances mu^2+nu^2/4 (constant field)", _worst(_const_runs(), "var"), 1e-4),
        _lt(5, "variances mu^2+nu^2/4 (driven field)", _worst(_var_runs(), "var"), 1e-4),
    ]


def suite_eigenstructure() -> list[Check]:
    rng = np.random.default_rng(6006)
    ladder = 0.0
    for _ in range(3):
        label = sample_label(rng)
        psi = coherent_wavefunction_const(label, PSI_GRID)
        ladder = max(ladder,
                     relative_residual(apply_ladder(LadderKind.A, psi), label.alpha * psi.values, psi),
                     relative_residual(apply_ladder(LadderKind.B, psi), label.beta * psi.values, psi))
    invariant = 0.0
    traj = _trajectory()
    for i in _trajectory_nodes():
        label = sample_label(rng)
        psi = coherent_wavefunction_var(label, traj.node(i), PSI_GRID)
        invariant = max(invariant,
                        relative_residual(apply_ladder(LadderKind.Avar, psi), label.alpha * psi.values, psi),
                        relative_residual(apply_ladder(LadderKind.Bvar, psi), label.beta * psi.values, psi))
    energy = angular = 0.0
    for n1, n2 in itertools.product(range(5), repeat=2):
        if n1 + n2 > 4:
            continue
        n = FockLabel(n1, n2)
        psi = fock_wavefunction_const(n, PSI_GRID)
        e_exp, l_exp = fock_quantum_numbers(n)
        energy = max(energy, abs(psi.inner(apply_hamiltonian(psi)).real - e_exp))
        angular = max(angular, abs(psi.inner(apply_angular_momentum(psi)).real - l_exp))
    psi = coherent_wavefunction_const(CoherentLabel(0.3 - 0.2j, -0.4 + 0.1j), PSI_GRID)
    comm = 0.0
    pairs = [("A", "Adag", 1.0), ("B", "Bdag", 1.0), ("A", "B", 0.0), ("A", "Bdag", 0.0),
             ("Adag", "B", 0.0), ("Adag", "Bdag", 0.0)]
    for a, b, c in pairs:
        ab = apply_ladder(a, apply_ladder(b, psi)).values
        ba = apply_ladder(b, apply_ladder(a, psi)).values
        comm = max(comm, relative_residual(ab - ba, c * psi.values, psi))
    return [
        _lt(6, "A, B eigenrelations (constant field)", ladder, 1e-4),
        _lt(6, "driven invariants eigenrelations", invariant, 1e-4),
        _lt(6, "energy eigenvalues n1+1/2, n1+n2<=4", energy, 1e-3),
        _lt(6, "L_z eigenvalues n2-n1, n1+n2<=4", angular, 1e-3),
        _lt(6, "ladder commutators", comm, 1e-4),
    ]


def suite_schrodinger() -> list[Check]:
    traj = _trajectory()
    label = CoherentLabel(0.5 + 0.3j, -0.4 + 0.2j)
    h = traj.step
    worst = 0.0
    for i in _trajectory_nodes():
        before, mid, after = (coherent_wavefunction_var(label, traj.node(j), PSI_GRID)
                              for j in (i - 1, i, i + 1))
        dt = 1j * (after.values - before.values) / (2 * h)
        worst = max(worst, relative_residual(dt, apply_hamiltonian(mid, VALIDATION_DRIVE), mid))
    return [_lt(7, "driven Schrodinger residual at 5 nodes", worst, 1e-3)]


def _taylor_oracle(D, l, cap: int) -> tuple[np.ndarray, np.ndarray]:
    """Taylor coefficients of exp(-L D L^T/2 + L D l) by truncated power series.

    Returns (H, M): H[n1, n2] is n1! n2! times the coefficient of a^n1 b^n2,
    M is the same computed from entrywise absolute values, used as a scale.
    """
    def series(D, dl):
        q = np.zeros((cap + 1, cap + 1), dtype=complex)
        q[1, 0], q[0, 1] = dl[0], dl[1]
        q[2, 0], q[0, 2], q[1, 1] = -D[0, 0] / 2, -D[1, 1] / 2, -D[0, 1]
        total = np.zeros_like(q)
        total[0, 0] = 1
        term = total.copy()
        for k in range(1, cap + 1):
            nxt = np.zeros_like(q)
            for (i, j), (a, b) in itertools.product(np.ndindex(q.shape), np.ndindex(q.shape)):
                if i + a <= cap and j + b <= cap and q[a, b] != 0:
                    nxt[i + a, j + b] += term[i, j] * q[a, b]
            term = nxt / k
            total += term
        fact = np.array([math.factorial(i) for i in range(cap + 1)], dtype=float)
        return total * np.outer(fact, fact)

    H = series(D, D @ l)
    M = series(-np.abs(D), np.abs(D) @ np.abs(l))
    return H, np.abs(M)


def suite_hermite() -> list[Check]:
    rng = np.random.default_rng(8008)
    worst = 0.0
    cap = 6
    for _ in range(10):
        d = rng.normal(size=3) + 1j * rng.normal(size=3)
        D = np.array([[d[0], d[1]], [d[1], d[2]]])
        l = rng.normal(size=2) + 1j * rng.normal(size=2)
        table = hermite_2var(D, l, cap=cap).values
        H, M = _taylor_oracle(D, l, cap)
        for n1, n2 in itertools.product(range(cap + 1), repeat=2):
            if n1 + n2 <= cap:
                worst = max(worst, abs(table[n1, n2] - H[n1, n2]) / M[n1, n2])
    return [_lt(8, "recurrence vs Taylor coefficients", worst, 1e-10)]


def suite_fock() -> list[Check]:
    rng = np.random.default_rng(9009)
    X1, X2 = _x_mesh()
    norm, neg = _fock_norms()
    ground = 0.0
    for p in (TrajectoryPoint.rest(), _trajectory().node(_trajectory_nodes()[3])):
        frame = sample_frame(rng)
        w0 = fock_tomogram(FockLabel(0, 0), p, frame, X1, X2)
        wg = coherent_tomogram_generating(CoherentLabel(0, 0), p, frame, X1, X2)
        ground = max(ground, float(np.max(np.abs(w0 - wg))))
    frame = sample_frame(rng)
    n = FockLabel(2, 1)
    numeric = tomogram_2d(fock_wavefunction_const(n, PSI_GRID), frame).values
    ladder = float(np.max(np.abs(numeric - fock_tomogram(n, TrajectoryPoint.rest(), frame, X1, X2))))
    return [
        _ge(9, "Fock tomograms nonnegative (min value)", neg, -1e-10),
        _lt(9, "Fock tomograms normalized", norm, 1e-4),
        _lt(9, "(0,0) equals alpha=beta=0 coherent", ground, 1e-10),
        _lt(9, "(2,1) Hermite vs FRFT of ladder state", ladder, 1e-3),
    ]


def suite_trajectory() -> list[Check]:
    tr = integrate_trajectory(ZeroDrive(), 1.0, 0j, 4 * math.pi, 1e-3)
    closed = float(np.max(np.abs(tr.z0 - np.cos(tr.times / 2))))
    errs = []
    for h in (0.2, 0.1):
        t = integrate_trajectory(ZeroDrive(), 1.0, 0j, 4 * math.pi, h)
        errs.append(float(np.max(np.abs(t.z0 - np.cos(t.times / 2)))))
    energy = np.abs(tr.z0_dot) ** 2 + np.abs(tr.z0) ** 2 / 4
    drift = float(np.max(np.abs(energy - energy[0])) / energy[0])
    return [
        _lt(10, "zero drive reproduces cos(t/2)", closed, 1e-8),
        _ge(10, "error ratio on step halving", errs[0] / errs[1], 8.0),
        _lt(10, "conserved energy drift", drift, 1e-8),
    ]


def suite_reconstruction() -> list[Check]:
    x_grid = Grid1D(-8.0, 8.0, 64)
    err = herm = trace = diag = purity = 0.0
    zoo = [0j, 0.5 + 0.3j, -0.4 + 0.8j]
    for k in zoo:
        psi = mode_coherent_wavefunction(k, MODE_GRID)
        w = NumericTomogram1D(psi, MODE_GRID, method="czt")
        rho = reconstruct_density_1d(w, x_grid)
        ref = mode_coherent_wavefunction(k, x_grid)
        err = max(err, float(np.max(np.abs(rho.values - np.outer(ref, ref.conj())))))
        herm = max(herm, rho.hermiticity_error())
        trace = max(trace, abs(rho.trace() - 1))
        purity = max(purity, abs(rho.purity() - 1))
        position = tomogram_1d(psi, MODE_GRID, TwoModeFrame.from_values(1, 0, 1, 0).f1, x_grid,
                               method="direct").values
        diag = max(diag, float(np.max(np.abs(rho.diagonal() - position))))
    return [
        _lt(11, "rho(x, x') vs psi psi* (Gaussian zoo)", err, 1e-3),
        _lt(11, "Hermiticity", herm, 1e-8),
        _lt(11, "trace", trace, 1e-3),
        _lt(11, "diagonal vs position tomogram", diag, 1e-3),
        _lt(11, "purity", purity, 1e-2),
    ]


def suite_fidelity() -> list[Check]:
    rng = np.random.default_rng(12012)
    pairs = [(sample_label(rng, 1.0), sample_label(rng, 1.0)) for _ in range(3)]
    pairs.append((CoherentLabel(1, 0), CoherentLabel(0, 0)))
    tomo = pure = sym = 0.0
    for l1, l2 in pairs:
        exact = math.exp(-abs(l1.alpha - l2.alpha) ** 2 - abs(l1.beta - l2.beta) ** 2)
        m1, m2 = coherent_mode_tomograms(l1), coherent_mode_tomograms(l2)
        p12 = fidelity_tomographic(m1[0], m2[0]) * fidelity_tomographic(m1[1], m2[1])
        p21 = fidelity_tomographic(m2[0], m1[0]) * fidelity_tomographic(m2[1], m1[1])
        psi1 = coherent_wavefunction_const(l1, PSI_GRID)
        psi2 = coherent_wavefunction_const(l2, PSI_GRID)
        tomo = max(tomo, abs(p12 - exact))
        sym = max(sym, abs(p12 - p21))
        pure = max(pure, abs(fidelity_pure(psi1, psi2) - exact))
    selfs = 0.0
    for l1, _ in pairs[:2]:
        m = coherent_mode_tomograms(l1)
        selfs = max(selfs, abs(fidelity_tomographic(m[0], m[0]) * fidelity_tomographic(m[1], m[1]) - 1))
        psi = coherent_wavefunction_const(l1, PSI_GRID)
        selfs = max(selfs, abs(fidelity_pure(psi, psi) - 1))
    psi0 = mode_coherent_wavefunction(0j, MODE_GRID)
    w0 = NumericTomogram1D(psi0, MODE_GRID, method="czt")
    selfs = max(selfs, abs(fidelity_tomographic(w0, w0) - 1))
    orth = fidelity_pure(ground_state(PSI_GRID), fock_wavefunction_const(FockLabel(1, 0), PSI_GRID))
    return [
        _lt(12, "tomographic vs exp(-|da|^2-|db|^2)", tomo, 1e-2),
        _lt(12, "pure overlap vs exp(-|da|^2-|db|^2)", pure, 1e-5),
        _lt(12, "symmetry P12 = P21", sym, 1e-3),
        _lt(12, "self-fidelity of pure states", selfs, 1e-2),
        _lt(12, "Fock (0,0) vs (1,0) pure overlap", orth, 1e-6),
    ]


def suite_determinism() -> list[Check]:
    """Rendering a pair of cheap suites twice must give identical bytes."""
    first = render_report("hermite", _uncached(["hermite", "trajectory"]))
    second = render_report("hermite", _uncached(["hermite", "trajectory"]))
    return [Check(13, "report bytes identical on rerun", float(first != second), 0.5, first == second,
                  "<")]


def _uncached(names):
    out = []
    for name in names:
        out.extend(SUITES[name]())
    return out


SUITES = {
    "gaussian-oracle": suite_gaussian_oracle,
    "varying-field": suite_varying_field,
    "normalization": suite_normalization,
    "homogeneity": suite_homogeneity,
    "variance": suite_variance,
    "eigenstructure": suite_eigenstructure,
    "schrodinger": suite_schrodinger,
    "hermite": suite_hermite,
    "fock": suite_fock,
    "trajectory": suite_trajectory,
    "reconstruction": suite_reconstruction,
    "fidelity": suite_fidelity,
    "determinism": suite_determinism,
}
SUITE_ORDER = list(SUITES)


def clear_caches():
    """Forget shared intermediate results so the next run recomputes everything."""
    for fn in (_const_runs, _var_runs, _trajectory, _fock_norms):
        fn.cache_clear()


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return _uncached(SUITE_ORDER)
    if name not in SUITES:
        raise InvalidArgumentError(
            f"unknown suite {name!r}; choose from: all, {', '.join(SUITE_ORDER)}")
    return SUITES[name]()


def render_report(name: str, checks: list[Check]) -> str:
    passed = sum(c.passed for c in checks)
    lines = [f"chargetomo validation report: suite {name}"]
    lines += [c.line() for c in checks]
    lines.append(f"summary: {passed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"


def report_json(name: str, checks: list[Check]) -> str:
    body = {"suite": name, "checks": [asdict(c) for c in checks],
            "passed": sum(c.passed for c in checks), "total": len(checks)}
    return json.dumps(body, sort_keys=True, indent=1) + "\n"
