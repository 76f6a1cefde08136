"""
-------------------------------------------------
SSNELab - Concrete certified operators
-------------------------------------------------

Closed-form projections, the linear test operators, averaging and composition.
"""

from typing import Iterable, List, Optional, Sequence
from ssnelab.moduli.Modulus import Modulus, CldGauge
from ssnelab.moduli import calculus
from ssnelab.core.Error import CertificateError, DimensionMismatchError, PreconditionError
from .CertifiedOperator import CertifiedOperator, Certificates
from .MonotoneMap import CHECK_BOX, CHECK_SEED, CHECK_TRIALS
from .Vector import as_vector, batch_norm
import numpy as np


def _averaged_certificates(alpha: float, witness: Optional[np.ndarray] = None) -> Certificates:
    """Certificates every α-averaged map carries, plus a fixed point when one is known."""
    chi = calculus.ssne_of_averaged(alpha)
    certificates = Certificates(
        averaged_alpha=alpha,
        ssne=chi,
        sne=calculus.sne_from_ssne(chi),
        supercoercivity=calculus.supercoercivity_of_averaged(alpha),
        lipschitz=1.0
    )
    if witness is not None:
        certificates = certificates.replace(
            afp_bound=Modulus.constant(float(np.linalg.norm(witness)), nonnegative=True),
            afp_witness=witness
        )
    return certificates

def _origin_certificates(n: int, lipschitz: float) -> Certificates:
    return Certificates(
        lipschitz=lipschitz,
        afp_bound=Modulus.constant(0.0, nonnegative=True),
        afp_witness=np.zeros(n)
    )


# --- projections --------------------------------------------------------------

def project_ball(center: Iterable[float], radius: float) -> CertifiedOperator:
    c = as_vector(center)
    if not radius > 0:
        raise PreconditionError(f"Ball radius must be positive, got {radius}.")
    r = float(radius)

    def p(x: np.ndarray) -> np.ndarray:
        d = x - c
        dn = batch_norm(d)
        scale = np.minimum(1.0, np.divide(r, dn, out=np.ones_like(dn), where=dn > 0))
        return c + scale[..., None] * d

    return CertifiedOperator(f"P_ball[{c.tolist()},{r:g}]", len(c), p, _averaged_certificates(0.5, c))


def project_halfspace(a: Iterable[float], b: float) -> CertifiedOperator:
    """Projection onto {x : ⟨a,x⟩ ≤ b}."""
    a = as_vector(a)
    aa = float(a @ a)
    if aa == 0:
        raise PreconditionError("Halfspace normal must be nonzero.")
    b = float(b)

    def p(x: np.ndarray) -> np.ndarray:
        t = np.maximum(0.0, (x @ a - b) / aa)
        return x - t[..., None] * a

    return CertifiedOperator(f"P_half[{a.tolist()},{b:g}]", len(a), p, _averaged_certificates(0.5, (b / aa) * a))


def project_box(lower: Iterable[float], upper: Iterable[float]) -> CertifiedOperator:
    lo, hi = as_vector(lower), as_vector(upper)
    if lo.shape != hi.shape:
        raise DimensionMismatchError(f"Box bounds differ in dimension: {lo.shape} vs {hi.shape}.")
    if (lo > hi).any():
        raise PreconditionError("Box lower bound exceeds upper bound.")

    return CertifiedOperator(f"P_box[{lo.tolist()},{hi.tolist()}]", len(lo), lambda x: np.clip(x, lo, hi),
                             _averaged_certificates(0.5, np.clip(np.zeros(len(lo)), lo, hi)))


# --- linear test operators ----------------------------------------------------

def identity(n: int) -> CertifiedOperator:
    return CertifiedOperator("id", n, lambda x: np.array(x), _origin_certificates(n, 1.0))


def negation(n: int) -> CertifiedOperator:
    return CertifiedOperator("-id", n, lambda x: -x, _origin_certificates(n, 1.0))


def scaled_identity(n: int, beta: float) -> CertifiedOperator:
    """β·id; for |β| < 1 it contracts for large distances with the constant gauge |β|."""
    beta = float(beta)
    certificates = _origin_certificates(n, abs(beta))
    if abs(beta) < 1:
        gauge = CldGauge.constant(abs(beta))
        chi = calculus.ssne_of_cld(gauge)
        certificates = certificates.replace(
            cld_gauge=gauge,
            ssne=chi,
            sne=calculus.sne_from_ssne(chi),
            supercoercivity=calculus.supercoercivity_of_cld(gauge)
        )
    return CertifiedOperator(f"{beta:g}*id", n, lambda x: beta * x, certificates)


def linear_operator(matrix: Sequence[Sequence[float]], name: Optional[str] = None) -> CertifiedOperator:
    m = np.array(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.size == 0:
        raise PreconditionError(f"Linear operator needs a square matrix, got shape {m.shape}.")
    if not np.isfinite(m).all():
        raise PreconditionError("Matrix entries must be finite.")
    m.setflags(write=False)
    n = m.shape[0]
    return CertifiedOperator(name or "M", n, lambda x: x @ m.T, _origin_certificates(n, float(np.linalg.norm(m, 2))))


def rotation(theta: float) -> CertifiedOperator:
    c, s = np.cos(theta), np.sin(theta)
    return linear_operator([[c, -s], [s, c]], name=f"rot[{theta:g}]")


# --- constructions ------------------------------------------------------------

def check_nonexpansive(t: CertifiedOperator, trials: int = CHECK_TRIALS, seed: int = CHECK_SEED,
                       box: tuple = CHECK_BOX) -> None:
    """Sampled construction-time check; raises CertificateError on a violating pair."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(*box, size=(trials, t.dimension))
    y = rng.uniform(*box, size=(trials, t.dimension))
    dist = batch_norm(x - y)
    img = batch_norm(t(x) - t(y))
    bad = img > dist + 1e-12 * (1 + dist) + 4 * t.tolerance
    if bad.any():
        i = int(np.argmax(bad))
        raise CertificateError(f"Operator '{t.name}' is not nonexpansive: ‖Tx−Ty‖={img[i]:g} > ‖x−y‖={dist[i]:g}.")


def make_averaged(alpha: float, t: CertifiedOperator) -> CertifiedOperator:
    """(1−α)·id + α·T for nonexpansive T; same fixed points as T."""
    if not 0 < alpha < 1:
        raise PreconditionError(f"Averagedness constant must lie in (0, 1), got {alpha}.")
    check_nonexpansive(t)
    a = float(alpha)

    certificates = _averaged_certificates(a, t.certificates.afp_witness)
    if t.certificates.afp_bound is not None:
        certificates = certificates.replace(afp_bound=t.certificates.afp_bound)

    return CertifiedOperator(f"avg[{a:g}]({t.name})", t.dimension, lambda x: (1 - a) * x + a * t(x),
                             certificates, tolerance=a * t.tolerance)


def compose(ops: Sequence[CertifiedOperator]) -> CertifiedOperator:
    """Composition applied in list order: compose([T1, T2])(x) = T2(T1(x))."""
    ops = list(ops)
    if not ops:
        raise PreconditionError("Cannot compose an empty list of operators.")
    n = ops[0].dimension
    if any(op.dimension != n for op in ops):
        raise DimensionMismatchError(f"Cannot compose operators of dimensions {[op.dimension for op in ops]}.")

    def composite(x: np.ndarray) -> np.ndarray:
        for op in ops:
            x = op(x)
        return x

    certificates = Certificates()
    if all(op.certificates.ssne is not None for op in ops):
        chi = calculus.ssne_of_composition([op.certificates.ssne for op in ops])
        certificates = certificates.replace(ssne=chi, sne=calculus.sne_from_ssne(chi))
    if all(op.certificates.lipschitz is not None for op in ops):
        certificates = certificates.replace(lipschitz=float(np.prod([op.certificates.lipschitz for op in ops])))

    # evaluation error of T_m∘…∘T_1 propagates through the later factors
    tolerance = 0.0
    for op in ops:
        lip = op.certificates.lipschitz if op.certificates.lipschitz is not None else 1.0
        tolerance = lip * tolerance + op.tolerance

    return CertifiedOperator("∘".join(op.name for op in reversed(ops)), n, composite, certificates, tolerance)
