"""Independent verification engine.

Everything here deliberately avoids the closed forms under test: eigenvalues
come from a dense general-complex eigensolver (LAPACK zgeev: balancing,
Hessenberg reduction, shifted QR with deflation), classification reads the
computed eigenvectors, and the |lambda| = n borderline is traced by marching
squares over a grid of oracle spectra.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import AmbiguousType, DomainError, NoConvergence, SizeError
from .geometry import CurveSamples
from .kms import EigType, KmsMatrix, build_matrix

_MAX_N = 512
_GAP_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class Spectrum:
    n: int
    rho: complex
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None  # column i pairs with eigenvalue i


def eigenvalues(m, want_vectors: bool = False) -> Spectrum:
    """Full spectrum of a KmsMatrix (or any square complex array)."""
    if isinstance(m, KmsMatrix):
        a, n, rho = m.entries, m.n, m.rho
    else:
        a = np.asarray(m, dtype=complex)
        n, rho = a.shape[0], complex("nan")
    if a.shape[0] != a.shape[1]:
        raise SizeError(f"matrix must be square, got {a.shape}")
    if a.shape[0] > _MAX_N:
        raise SizeError(f"oracle is desk-scale only (n <= {_MAX_N}), got {a.shape[0]}")
    try:
        if want_vectors:
            w, v = np.linalg.eig(a)
        else:
            w, v = np.linalg.eigvals(a), None
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return Spectrum(n=n, rho=rho, eigenvalues=w, eigenvectors=v)


def kms_spectrum(n: int, rho: complex, want_vectors: bool = False) -> Spectrum:
    return eigenvalues(build_matrix(n, rho), want_vectors=want_vectors)


def classify_vector(v: np.ndarray) -> Optional[EigType]:
    """Type tag from eigenvector symmetry; None when ambiguous.

    Skew-symmetric entries (v_j = -v_{n-1-j}) mean type-1, symmetric entries
    mean type-2; the comparison is ||v - rev(v)|| against ||v + rev(v)|| with
    ratios inside [0.5, 2] declared unclassifiable.
    """
    v = np.asarray(v)
    rev = v[::-1]
    d_sym = float(np.linalg.norm(v - rev))   # small for symmetric -> Type2
    d_skew = float(np.linalg.norm(v + rev))  # small for skew -> Type1
    if d_skew == 0.0:
        return EigType.Type1
    ratio = d_sym / d_skew
    if 0.5 <= ratio <= 2.0:
        return None
    return EigType.Type2 if ratio < 0.5 else EigType.Type1


def classify_eigenvalue(s: Spectrum, index: int) -> Optional[EigType]:
    """Classify eigenvalue `index` of a spectrum computed with eigenvectors."""
    if s.eigenvectors is None:
        raise AmbiguousType("spectrum was computed without eigenvectors")
    lam = s.eigenvalues[index]
    others = np.delete(s.eigenvalues, index)
    if others.size and np.min(np.abs(others - lam)) <= _GAP_TOL:
        raise AmbiguousType(f"eigenvalue {lam} is clustered (gap <= {_GAP_TOL})")
    return classify_vector(s.eigenvectors[:, index])


def count_extraordinary(s: Spectrum) -> int:
    """Number of eigenvalues with |lambda| > n (strictly, with 1e-12 slack)."""
    return int(np.sum(np.abs(s.eigenvalues) > s.n * (1.0 + 1e-12)))


def closed_form_eigenvalues_n3(rho: complex):
    """The three eigenvalues of K_3(rho) in closed form.

    1 - rho^2 is the (single) type-1 eigenvalue; the +/- pair is type-2.
    Used as an independent cross-check of the dense solver and the series.
    """
    rho = complex(rho)
    root = cmath.sqrt(rho * rho + 8.0)
    lam1 = 1.0 - rho * rho
    lam2 = (2.0 + rho * rho + rho * root) / 2.0
    lam3 = (2.0 + rho * rho - rho * root) / 2.0
    return lam1, lam2, lam3


# ---------------------------------------------------------------------------
# marching-squares borderline tracer


def _grid_values(n, res, bounds, eig_type):
    re0, re1, im0, im1 = bounds
    xs = np.linspace(re0, re1, res)
    ys = np.linspace(im0, im1, res)
    f = np.empty((res, res))
    fallback = 0
    for j, y in enumerate(ys):
        for i, x in enumerate(xs):
            s = kms_spectrum(n, complex(x, y), want_vectors=eig_type is not None)
            if eig_type is None:
                f[j, i] = np.max(np.abs(s.eigenvalues)) - n
                continue
            best = None
            for idx in range(n):
                try:
                    tag = classify_eigenvalue(s, idx)
                except AmbiguousType:
                    tag = None
                if tag is eig_type:
                    mag = abs(s.eigenvalues[idx])
                    best = mag if best is None else max(best, mag)
            if best is None:
                best = float(np.max(np.abs(s.eigenvalues)))
                fallback += 1
            f[j, i] = best - n
    return xs, ys, f, fallback


def _cell_segments(x0, x1, y0, y1, fa, fb, fc, fd):
    # corners: a=(x0,y0) b=(x1,y0) c=(x1,y1) d=(x0,y1); f<0 inside
    def interp(p, q, fp, fq):
        t = fp / (fp - fq)
        return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))

    a, b, c, d = (x0, y0), (x1, y0), (x1, y1), (x0, y1)
    idx = (fa < 0) | ((fb < 0) << 1) | ((fc < 0) << 2) | ((fd < 0) << 3)
    if idx in (0, 15):
        return []
    e_ab = interp(a, b, fa, fb) if (fa < 0) != (fb < 0) else None
    e_bc = interp(b, c, fb, fc) if (fb < 0) != (fc < 0) else None
    e_cd = interp(c, d, fc, fd) if (fc < 0) != (fd < 0) else None
    e_da = interp(d, a, fd, fa) if (fd < 0) != (fa < 0) else None
    table = {
        1: [(e_da, e_ab)], 2: [(e_ab, e_bc)], 3: [(e_da, e_bc)],
        4: [(e_bc, e_cd)], 6: [(e_ab, e_cd)], 7: [(e_da, e_cd)],
        8: [(e_cd, e_da)], 9: [(e_cd, e_ab)], 11: [(e_cd, e_bc)],
        12: [(e_bc, e_da)], 13: [(e_bc, e_ab)], 14: [(e_ab, e_da)],
    }
    if idx in (5, 10):
        # saddle: disambiguate with the center sign
        center_neg = (fa + fb + fc + fd) / 4.0 < 0
        if idx == 5:
            segs = [(e_ab, e_bc), (e_cd, e_da)] if center_neg else [(e_da, e_ab), (e_bc, e_cd)]
        else:
            segs = [(e_da, e_ab), (e_bc, e_cd)] if center_neg else [(e_ab, e_bc), (e_cd, e_da)]
        return segs
    return table[idx]


def _chain(segments, tol):
    # join shared endpoints into polylines
    def key(p):
        return (round(p[0] / tol), round(p[1] / tol))

    ends: dict = {}
    for si, (p, q) in enumerate(segments):
        ends.setdefault(key(p), []).append((si, 0))
        ends.setdefault(key(q), []).append((si, 1))
    used = [False] * len(segments)
    chains = []
    for start in range(len(segments)):
        if used[start]:
            continue
        used[start] = True
        p, q = segments[start]
        chain = [p, q]
        for head, grow_front in ((q, False), (p, True)):
            cur = head
            while True:
                cands = [(si, e) for (si, e) in ends.get(key(cur), []) if not used[si]]
                if not cands:
                    break
                si, e = cands[0]
                used[si] = True
                nxt = segments[si][1 - e]
                if grow_front:
                    chain.insert(0, nxt)
                else:
                    chain.append(nxt)
                cur = nxt
        chains.append(chain)
    return chains


def numeric_borderline(n: int, bounds, resolution: int = 64,
                       eig_type: Optional[EigType] = None) -> list:
    """Trace the contour |lambda| = n over a rectangle of the rho plane.

    bounds is (re_min, re_max, im_min, im_max).  When eig_type is given only
    eigenvalues classified to that type feed the contour function; grid nodes
    where classification fails fall back to the union over all eigenvalues
    (reported with a warning).  Returns a list of CurveSamples with center 0,
    one per connected polyline.
    """
    if resolution < 64:
        raise DomainError(f"grid resolution must be >= 64, got {resolution}")
    xs, ys, f, fallback = _grid_values(n, resolution, bounds, eig_type)
    if fallback:
        warnings.warn(f"type classification failed at {fallback} grid nodes; "
                      "union contour used there", stacklevel=2)
    segments = []
    for j in range(resolution - 1):
        for i in range(resolution - 1):
            segs = _cell_segments(xs[i], xs[i + 1], ys[j], ys[j + 1],
                                  f[j, i], f[j, i + 1], f[j + 1, i + 1], f[j + 1, i])
            segments.extend(s for s in segs if s[0] is not None and s[1] is not None)
    cell = max(xs[1] - xs[0], ys[1] - ys[0])
    out = []
    inside_unit = 0
    for chain in _chain(segments, tol=1e-9 + 1e-6 * cell):
        samples = []
        for (x, y) in chain:
            rho = complex(x, y)
            if abs(rho) <= 1.0:
                inside_unit += 1
            samples.append((cmath.phase(rho), abs(rho), rho))
        out.append(CurveSamples(center=0j, samples=samples))
    if inside_unit:
        # soft check only: every traced borderline is expected to stay
        # outside the unit circle, but nothing downstream relies on it
        warnings.warn(f"{inside_unit} borderline samples fall inside the unit "
                      "circle", stacklevel=2)
    return out
