"""Hardy space of the right half-plane and finite rational Herglotz models.

The Hardy basis used throughout is

    t_n(z) = (1/sqrt(pi)) (1/(z+1)) ((z-1)/(z+1))**n,   n = 0, 1, ...

whose kernel sum telescopes to 1/(2 pi (z + conj(w))).  A rational
Herglotz function with finitely many real poles,

    phi(z) = a + b z - i sum_j m_j / (t_j - i z),

has nonnegative real part on the right half-plane; with a = b = 0 the
functions e_j(z) = sqrt(m_j) / (t_j - i z) reproduce the kernel
(phi(z) + conj(phi(w))) / (z + conj(w)) exactly and form an orthonormal
family.  Note the -i in front of the sum: it is exactly what makes the
quotient and sum forms of the kernel agree as an algebraic identity.

Norm computations never use quadrature; finite combinations of Cauchy
kernels k_w(z) = 1/(z + conj(w)) are paired through their Gram matrix
<k_u, k_v> = 1/(v + conj(u)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RankDeficiencyError

_SQRT_PI = math.sqrt(math.pi)
_TWO_PI = 2.0 * math.pi


def _require_right_half(z: complex, what: str = "point") -> complex:
    z = complex(z)
    if not z.real > 0.0:
        raise DomainError(f"{what} {z!r} is not in the open right half-plane")
    return z


def hardy_basis(n: int, z: complex) -> complex:
    """Orthonormal Hardy basis function t_n at z, Re z > 0."""
    if n < 0:
        raise ValueError("basis index must be nonnegative")
    z = _require_right_half(z)
    ratio = (z - 1.0) / (z + 1.0)
    return ratio**n / (_SQRT_PI * (z + 1.0))


def hardy_kernel_exact(z: complex, w: complex) -> complex:
    """Closed form 1/(2 pi (z + conj(w)))."""
    return 1.0 / (_TWO_PI * (complex(z) + complex(w).conjugate()))


def hardy_kernel_partial(z: complex, w: complex, terms: int) -> complex:
    """sum_{n=0..terms} t_n(z) conj(t_n(w)), converging to the closed form.

    The per-term ratio is (z-1)(conj(w)-1) / ((z+1)(conj(w)+1)), so the
    truncation error is geometric in its modulus.
    """
    z = _require_right_half(z)
    w = _require_right_half(w)
    base = 1.0 / (math.pi * (z + 1.0) * (w + 1.0).conjugate())
    ratio = ((z - 1.0) / (z + 1.0)) * ((w - 1.0) / (w + 1.0)).conjugate()
    total = 0j
    term = base
    for _ in range(terms + 1):
        total += term
        term *= ratio
    return total


@dataclass(frozen=True)
class HerglotzModel:
    """Rational Herglotz data: positive masses at distinct real poles.

    ``a`` must be purely imaginary and ``b`` nonnegative; the shipped
    identities all take a = b = 0 (finite-dimensional kernel space).
    """

    masses: tuple
    poles: tuple
    a: complex = 0j
    b: float = 0.0

    def __post_init__(self):
        masses = tuple(float(m) for m in self.masses)
        poles = tuple(float(t) for t in self.poles)
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "poles", poles)
        if len(masses) != len(poles) or not masses:
            raise ValueError("need equally many masses and poles, at least one each")
        if any(m <= 0 for m in masses):
            raise ValueError("masses must be positive")
        if len(set(poles)) != len(poles):
            raise ValueError("poles must be distinct")
        if abs(complex(self.a).real) > 1e-15:
            raise ValueError("a must be purely imaginary")
        if self.b < 0:
            raise ValueError("b must be nonnegative")

    @property
    def count(self) -> int:
        return len(self.masses)

    def phi(self, z: complex) -> complex:
        z = complex(z)
        total = self.a + self.b * z
        for m, t in zip(self.masses, self.poles):
            total += -1j * m / (t - 1j * z)
        return total

    def basis_value(self, j: int, z: complex) -> complex:
        """e_j(z) = sqrt(m_j) / (t_j - i z), 1 <= j <= count."""
        if not 1 <= j <= self.count:
            raise IndexError(f"basis index {j} out of range [1, {self.count}]")
        m = self.masses[j - 1]
        t = self.poles[j - 1]
        return math.sqrt(m) / (t - 1j * complex(z))


def _require_off_axis(z: complex) -> complex:
    z = complex(z)
    if z.real == 0.0:
        raise DomainError(f"point {z!r} lies on the imaginary axis")
    return z


def lphi_kernel(model: HerglotzModel, z: complex, w: complex) -> complex:
    """Kernel sum form: sum_j e_j(z) conj(e_j(w)); valid off the imaginary axis."""
    z = _require_off_axis(z)
    w = _require_off_axis(w)
    return sum(
        model.basis_value(j, z) * model.basis_value(j, w).conjugate()
        for j in range(1, model.count + 1)
    )


def lphi_kernel_quotient(model: HerglotzModel, z: complex, w: complex) -> complex:
    """Kernel quotient form (phi(z) + conj(phi(w))) / (z + conj(w)).

    Raises when z + conj(w) vanishes; the sum form stays finite there.
    """
    z = _require_off_axis(z)
    w = _require_off_axis(w)
    denom = z + w.conjugate()
    if abs(denom) < 1e-13 * (1.0 + abs(z) + abs(w)):
        raise DomainError(f"quotient form undefined: z + conj(w) = {denom!r}")
    return (model.phi(z) + model.phi(w).conjugate()) / denom


def verify_phi_identity(model: HerglotzModel, z: complex, w: complex) -> float:
    """Residual between quotient and sum forms, relative to max(1, |sum|)."""
    s = lphi_kernel(model, z, w)
    q = lphi_kernel_quotient(model, z, w)
    return abs(q - s) / max(1.0, abs(s))


def verify_phi2(model: HerglotzModel, probe_points) -> float:
    """Orthonormality residual of the basis, via kernel-section expansion.

    Each e_j is expanded in the kernel sections at the probe points (one
    probe per basis function); inner products then reduce to Gram
    arithmetic.  Returns max |<e_j, e_k> - delta_jk|.
    """
    probes = [_require_off_axis(p) for p in probe_points]
    n = model.count
    if len(probes) != n:
        raise ValueError(f"need exactly {n} probe points, got {len(probes)}")
    gram = np.array(
        [[lphi_kernel(model, q, p) for p in probes] for q in probes], dtype=complex
    )
    eigenvalues = np.linalg.eigvalsh(gram)
    if eigenvalues[0] <= 1e-12 * max(eigenvalues[-1], 0.0) or eigenvalues[0] <= 0.0:
        raise RankDeficiencyError(
            "probe points are not generic: kernel sections do not span the space"
        )
    values = np.array(
        [[model.basis_value(j, q) for j in range(1, n + 1)] for q in probes], dtype=complex
    )
    coeffs = np.linalg.solve(gram, values)
    inner = values.conjugate().transpose() @ coeffs
    return float(np.max(np.abs(inner.transpose() - np.eye(n))))


def verify_paris(model: HerglotzModel, z: complex, w: complex, hardy_terms: int = 300) -> float:
    """Residual of the double-sum splitting of the half-plane Cauchy kernel.

    Checks 1/(z + conj(w)) against
    (sum_j e_j(z) conj(e_j(w))) * 2 pi * sum_{m<=hardy_terms}
    t_m(phi(z)) conj(t_m(phi(w))); the inner sum over basis functions is
    exact, only the Hardy sum is truncated.
    """
    z = _require_right_half(z)
    w = _require_right_half(w)
    pz = _require_right_half(model.phi(z), "phi(z)")
    pw = _require_right_half(model.phi(w), "phi(w)")
    lhs = 1.0 / (z + w.conjugate())
    rhs = lphi_kernel(model, z, w) * _TWO_PI * hardy_kernel_partial(pz, pw, hardy_terms)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def _halfplane_norm_sq(terms) -> float:
    """Squared norm of sum a_j k_{w_j}, k_w(z) = 1/(z + conj(w))."""
    total = 0j
    for a_j, w_j in terms:
        for a_k, w_k in terms:
            total += a_j * a_k.conjugate() / (w_k + w_j.conjugate())
    return total.real


def hardy_decompose(terms, model: HerglotzModel):
    """Split a Cauchy-kernel combination along the model's basis slots.

    ``terms`` represents f = sum a_j / (z + conj(w_j)) with Re w_j > 0.
    The slot components are again Cauchy-kernel combinations, with centers
    moved to phi(w_j) and coefficients weighted by conj(e_n(w_j)).  Returns
    (components, Parseval residual).
    """
    terms = tuple((complex(a), complex(w)) for a, w in terms)
    if not terms:
        raise ValueError("empty section")
    for _, w in terms:
        _require_right_half(w, "section center")
        _require_right_half(model.phi(w), "phi(center)")
    norm_f = _halfplane_norm_sq(terms)
    components = []
    total = 0.0
    for j in range(1, model.count + 1):
        comp = tuple(
            (a * model.basis_value(j, w).conjugate(), model.phi(w)) for a, w in terms
        )
        components.append(comp)
        total += _halfplane_norm_sq(comp)
    if norm_f <= 0.0:
        return components, 0.0
    return components, abs(total - norm_f) / norm_f


def apply_C_star_on_kernel(model: HerglotzModel, j: int, w: complex):
    """Adjoint section rule: k_w maps to (conj(e_j(w)), phi(w))."""
    w = _require_right_half(w)
    center = _require_right_half(model.phi(w), "phi(w)")
    return model.basis_value(j, w).conjugate(), center


def hardy_ratio(u: complex) -> float:
    """Modulus of the Hardy term ratio (u-1)/(u+1); the geometric rate."""
    u = complex(u)
    return abs((u - 1.0) / (u + 1.0))
