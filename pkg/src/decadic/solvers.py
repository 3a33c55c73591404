"""Solution pipelines for the exactly solvable multiplets.

Three regimes:

* M = 1: the energy is pinned to E = 0 and the quadratic coupling d is the
  eigenvalue of the main matrix (a coupling multiplet, any N).
* M = 2: the small determinant forces d = E^2/4; substituting it into the
  main determinant leaves a single polynomial whose real roots are the
  energies.
* M >= 2 general: treat the small and main determinants as a coupled
  bivariate system, eliminate d with a resultant, back-substitute, and keep
  only pairs whose full (N+1) x N recurrence system is genuinely rank
  deficient.  The rank test is what rejects extraneous resultant roots.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import polynomial as pl
from . import recurrence
from . import verify
from .model import ModelSpec, Multiplet, MultipletEntry

__all__ = [
    "SturmianResult",
    "CoupledPair",
    "CoupledSolution",
    "WrongModeError",
    "NotRankDeficientError",
    "solve_sturmian",
    "shifted_coupling_poly",
    "solve_energies",
    "solve_coupled",
    "null_vector",
    "shifted_coupling",
]


class WrongModeError(ValueError):
    """A solver was called with an M outside its regime."""


class NotRankDeficientError(ValueError):
    """null_vector was asked for a null vector of a full-rank matrix."""


def shifted_coupling(d, spec: ModelSpec):
    """Shifted coupling d - beta^2 + 2*N*alpha (zero for the N = 1 multiplet)."""
    return d - spec.beta * spec.beta + 2 * spec.n_states * spec.alpha


def _exact_spec(spec: ModelSpec):
    """Promote alpha/beta to Fraction (floats convert exactly)."""
    was_float = isinstance(spec.alpha, float) or isinstance(spec.beta, float)
    return dataclasses.replace(
        spec, alpha=Fraction(spec.alpha), beta=Fraction(spec.beta)), was_float


def null_vector(matrix, rtol: float = 1e-8):
    """Null vector of a numerically rank-deficient matrix.

    Normalized so that the first entry above rtol * max|v| equals 1.
    Raises NotRankDeficientError when the smallest singular value exceeds
    rtol times the largest (the signature of a spurious root).
    """
    a = np.asarray(matrix, dtype=float)
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] > 0 and s[-1] > rtol * s[0]:
        raise NotRankDeficientError(
            f"smallest singular value {s[-1]:.3e} exceeds {rtol:.1e} * {s[0]:.3e}")
    _, _, vt = np.linalg.svd(a)
    return _normalize_first_nonzero(vt[-1], rtol)


def _normalize_first_nonzero(v, rtol):
    v = np.asarray(v, dtype=float)
    threshold = rtol * max(np.max(np.abs(v)), 1e-300)
    for x in v:
        if abs(x) > threshold:
            return tuple(float(t) for t in v / x)
    return tuple(float(t) for t in v)


def _null_space(a, rtol):
    """Independent null directions, each normalized first-nonzero-to-1."""
    a = np.asarray(a, dtype=float)
    _, s, vt = np.linalg.svd(a)
    if s.size == 0 or s[0] == 0:
        cutoff = np.inf
    else:
        cutoff = rtol * s[0]
    out = []
    for k in range(vt.shape[0] - 1, -1, -1):
        sigma = s[k] if k < s.size else 0.0
        if sigma <= cutoff:
            out.append(_normalize_first_nonzero(vt[k], rtol))
    return out


def _eigvals_hessenberg(dense):
    """Eigenvalues of the (already upper-Hessenberg) main matrix.

    LAPACK's general eigensolver runs Hessenberg QR after a reduction step
    that is trivial here; if it fails to converge, fall back to the roots
    of the characteristic polynomial via the companion matrix.
    """
    a = np.asarray(dense, dtype=float)
    try:
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError:
        rs = pl.roots(pl.char_poly([list(map(float, row)) for row in dense]))
        vals = []
        for r in rs.roots:
            vals.extend([r.value] * r.multiplicity)
        return np.array(vals)


@dataclass(frozen=True)
class SturmianResult:
    """Coupling multiplet at M = 1, E = 0.

    d_values are the real eigen-couplings (ascending); shifted_couplings
    are d - beta^2 + 2*N*alpha in the same order; h_vectors are the matching
    series coefficients.  coupling_poly is the characteristic polynomial in
    the shifted coupling.
    """

    d_values: tuple
    shifted_couplings: tuple
    h_vectors: tuple
    coupling_poly: pl.Poly


def shifted_coupling_poly(spec: ModelSpec) -> pl.Poly:
    """Characteristic polynomial det(main - F*I) rewritten in the shifted
    coupling F = d - beta^2 + 2*N*alpha.  Exact for rational alpha, beta."""
    if spec.big_m != 1:
        raise WrongModeError(f"coupling multiplets require M = 1, got M = {spec.big_m}")
    exact, was_float = _exact_spec(spec)
    p = pl.char_poly(recurrence.main_matrix(exact, 0, 0))
    shift = exact.beta * exact.beta - 2 * exact.n_states * exact.alpha
    result = p.shifted_argument(shift)
    return result.as_float() if was_float else result


def solve_sturmian(spec: ModelSpec, reality_tol: float = 1e-8,
                   rank_rtol: float = 1e-8) -> SturmianResult:
    """All real eigen-couplings d of the M = 1 problem at E = 0, with their
    null vectors.  Any N is admissible."""
    if spec.big_m != 1:
        raise WrongModeError(f"coupling multiplets require M = 1, got M = {spec.big_m}")
    dense = [[float(v) for v in row]
             for row in recurrence.main_matrix(spec, 0.0, 0.0).dense()]
    vals = _eigvals_hessenberg(dense)
    d_values = sorted(float(v.real) for v in vals
                      if abs(v.imag) <= reality_tol * (1 + abs(v)))
    a = np.asarray(dense, dtype=float)
    h_vectors = []
    for d in d_values:
        h_vectors.append(null_vector(a - d * np.eye(spec.n_states), rank_rtol))
    shifts = tuple(float(shifted_coupling(d, spec)) for d in d_values)
    return SturmianResult(
        d_values=tuple(d_values),
        shifted_couplings=shifts,
        h_vectors=tuple(h_vectors),
        coupling_poly=shifted_coupling_poly(spec),
    )


def sturmian_multiplet(spec: ModelSpec, reality_tol: float = 1e-8,
                       rank_rtol: float = 1e-8,
                       residual_tol: float = 1e-10) -> Multiplet:
    """solve_sturmian repackaged as a validated multiplet (E = 0 throughout)."""
    result = solve_sturmian(spec, reality_tol=reality_tol, rank_rtol=rank_rtol)
    entries = []
    for d, h in zip(result.d_values, result.h_vectors):
        res = verify.recurrence_residual(spec, 0.0, d, h)
        entries.append(MultipletEntry(
            energy=0.0, quadratic_coupling=float(d), h=tuple(map(float, h)),
            recurrence_residual=res, validated=res <= residual_tol))
    return Multiplet.from_entries(entries)


def solve_energies(spec: ModelSpec, reality_tol: float = 1e-8,
                   rank_rtol: float = 1e-8,
                   residual_tol: float = 1e-10) -> Multiplet:
    """Energy multiplet at M = 2, where the small determinant fixes d = E^2/4.

    The main determinant with d = E^2/4 substituted is expanded exactly to a
    polynomial in E; each distinct real root is accepted only if the full
    recurrence system is rank deficient there.
    """
    if spec.big_m != 2:
        raise WrongModeError(f"energy multiplets require M = 2, got M = {spec.big_m}")
    exact, _ = _exact_spec(spec)
    sym = recurrence.main_matrix(exact, pl.BiPoly.energy(), pl.BiPoly.coupling())
    det = pl.det_bipoly(sym)
    poly_e = det.substitute_coupling(pl.Poly((0, 0, Fraction(1, 4))))
    root_set = pl.roots(poly_e.as_float())
    entries = []
    for root in root_set.roots:
        if abs(root.value.imag) > reality_tol * (1 + abs(root.value)):
            continue
        e0 = root.value.real
        d0 = e0 * e0 / 4
        entries.extend(_validated_entries(spec, e0, d0, rank_rtol, residual_tol))
    return Multiplet.from_entries(entries)


def _validated_entries(spec, e0, d0, rank_rtol, residual_tol):
    """Entries for one (E, d) candidate; empty when the rank test fails."""
    full = np.asarray(recurrence.full_system(spec, e0, d0), dtype=float)
    s = np.linalg.svd(full, compute_uv=False)
    if s[0] > 0 and s[-1] > rank_rtol * s[0]:
        return []
    entries = []
    for h in _null_space(full, rank_rtol):
        res = verify.recurrence_residual(spec, e0, d0, h)
        entries.append(MultipletEntry(
            energy=float(e0), quadratic_coupling=float(d0), h=tuple(map(float, h)),
            recurrence_residual=res, validated=res <= residual_tol))
    return entries


@dataclass(frozen=True)
class CoupledPair:
    energy: float
    quadratic_coupling: float
    h: tuple
    smallest_singular_value: float


@dataclass(frozen=True)
class CoupledSolution:
    pairs: tuple

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def solve_coupled(spec: ModelSpec, reality_tol: float = 1e-8,
                  rank_rtol: float = 1e-8, det_tol: float = 1e-8) -> CoupledSolution:
    """Simultaneous (E, d) pairs from the coupled secular system at M >= 2.

    Eliminates d between the small and main determinants with a Sylvester
    resultant, back-substitutes each real E into the small determinant to
    recover d, and accepts a pair only when both determinants vanish to
    det_tol (relative to a cancellation-free scale) and the full recurrence
    system is rank deficient.  An empty result is a valid outcome.
    """
    if spec.big_m < 2:
        raise WrongModeError(f"the coupled solver requires M >= 2, got M = {spec.big_m}")
    exact, _ = _exact_spec(spec)
    e_sym, d_sym = pl.BiPoly.energy(), pl.BiPoly.coupling()
    p_small = pl.det_bipoly(recurrence.small_matrix(exact, e_sym, d_sym))
    p_main = pl.det_bipoly(recurrence.main_matrix(exact, e_sym, d_sym))
    eliminant = pl.resultant(p_small, p_main, "coupling").as_float()
    if eliminant.is_zero:
        raise pl.DegenerateResultantError(
            "the resultant vanishes identically; the secular determinants "
            "share a common factor in d")
    small_f = pl.BiPoly(tuple(tuple(float(c) for c in row) for row in p_small.coeffs))
    main_f = pl.BiPoly(tuple(tuple(float(c) for c in row) for row in p_main.coeffs))

    pairs = []
    seen = []
    for root in pl.roots(eliminant).roots:
        if abs(root.value.imag) > reality_tol * (1 + abs(root.value)):
            continue
        e0 = root.value.real
        # back-substitute through both determinants: at special energies one
        # of them can degenerate to the zero polynomial in d (every d then
        # satisfies it) and only the other carries the coupling information
        d_candidates = []
        for source in (small_f, main_f):
            back = source.poly_in_coupling(e0)
            scale = max(abs(c) for c in back.coeffs)
            if back.degree < 1 or scale == 0:
                continue
            try:
                d_roots = pl.roots(back)
            except (ValueError, ArithmeticError):
                continue
            for d_root in d_roots.roots:
                if abs(d_root.value.imag) <= reality_tol * (1 + abs(d_root.value)):
                    d_candidates.append(d_root.value.real)
        for d0 in d_candidates:
            if any(abs(e0 - e) <= 1e-9 * (1 + abs(e)) and abs(d0 - d) <= 1e-9 * (1 + abs(d))
                   for e, d in seen):
                continue
            scale_s = max(small_f.eval_abs(e0, d0), 1.0)
            scale_m = max(main_f.eval_abs(e0, d0), 1.0)
            if abs(small_f(e0, d0)) > det_tol * scale_s:
                continue
            if abs(main_f(e0, d0)) > det_tol * scale_m:
                continue
            full = np.asarray(recurrence.full_system(spec, e0, d0), dtype=float)
            s = np.linalg.svd(full, compute_uv=False)
            if s[0] > 0 and s[-1] > rank_rtol * s[0]:
                continue
            h = null_vector(full, rank_rtol)
            seen.append((e0, d0))
            pairs.append(CoupledPair(
                energy=float(e0), quadratic_coupling=float(d0),
                h=tuple(map(float, h)),
                smallest_singular_value=float(s[-1] / s[0] if s[0] > 0 else 0.0)))
    pairs.sort(key=lambda p: (p.energy, p.quadratic_coupling, p.h))
    return CoupledSolution(pairs=tuple(pairs))
