"""Floating-point verification layer: the weight-2s slash action, the
three-term equation and its transfer-operator variant, the Laplace
eigenfunction kernel, a finite-difference Laplacian, and quadrature of the
Green's-type 1-form pairing two eigenfunctions.

Powers are principal-branch throughout; the precondition checks keep every
base strictly positive, so there is no branch ambiguity.  Scalar function
handles map a positive real (or a point of the upper half plane) to a
complex number; vector handles return a sequence of component values.
"""

from __future__ import annotations

from .congruence import rho
from .exact_core import IntMatrix2, T, T_PRIME

__all__ = [
    "slash_eval",
    "constant_lift",
    "three_term_residual",
    "transfer_residual",
    "r_zeta",
    "laplace_fd",
    "eta_line_integral",
    "apply_hecke_numeric",
    "hecke_image",
]

# (0 1; 1 0) * T'^-1, the determinant -1 word of the transfer variant.
_TRANSFER_PERM_WORD = IntMatrix2(-1, 1, 1, 0)


def slash_eval(f, mat, s, zeta):
    """(det)^s (c*zeta+d)^(-2s) f((a*zeta+b)/(c*zeta+d)) for a matrix with
    nonnegative entries, positive determinant, and zeta > 0."""
    det = mat.det
    if det <= 0:
        raise ValueError("slash action needs positive determinant, got %d" % det)
    if min(mat.key) < 0:
        raise ValueError("slash action needs nonnegative entries, got %r" % (mat,))
    if not zeta > 0:
        raise ValueError("slash action is evaluated on (0, infinity)")
    denom = mat.c * zeta + mat.d
    return det ** s * denom ** (-2 * s) * f((mat.a * zeta + mat.b) / denom)


def constant_lift(f, mu):
    """The vector handle whose mu components all equal the scalar handle f."""
    return lambda t: [f(t)] * mu


def three_term_residual(psi, table, s, zeta):
    """Componentwise defect of the three-term equation at zeta > 0:

        psi(z) - rho(T^-1) psi(z+1) - (z+1)^(-2s) rho(T'^-1) psi(z/(z+1)).

    Zero for period(-like) functions with spectral parameter s.
    """
    if not zeta > 0:
        raise ValueError("residuals are evaluated on (0, infinity)")
    perm_t = rho(table, T.inverse())
    perm_tp = rho(table, T_PRIME.inverse())
    base = psi(zeta)
    shifted = perm_t.apply(psi(zeta + 1))
    folded = perm_tp.apply(psi(zeta / (zeta + 1)))
    factor = (zeta + 1) ** (-2 * s)
    return [base[j] - shifted[j] - factor * folded[j] for j in range(table.mu)]


def transfer_residual(psi, table, s, sign, zeta):
    """Defect of the transfer-operator variant of the three-term equation,

        psi(z) - rho(T^-1) psi(z+1) -+ z^(-2s) rho(M T'^-1) psi((z+1)/z)

    with M = (0 1; 1 0); sign is +1 or -1."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not zeta > 0:
        raise ValueError("residuals are evaluated on (0, infinity)")
    perm_t = rho(table, T.inverse())
    perm_m = rho(table, _TRANSFER_PERM_WORD)
    base = psi(zeta)
    shifted = perm_t.apply(psi(zeta + 1))
    swapped = perm_m.apply(psi((zeta + 1) / zeta))
    factor = zeta ** (-2 * s)
    return [base[j] - shifted[j] - sign * factor * swapped[j] for j in range(table.mu)]


def r_zeta(z, zeta):
    """The kernel y/((x - zeta)^2 + y^2) for z = x + iy in the upper half
    plane and real zeta; its s-th power is a Laplace eigenfunction with
    eigenvalue s(1-s)."""
    if not z.imag > 0:
        raise ValueError("z must lie in the upper half plane")
    return z.imag / ((z.real - zeta) ** 2 + z.imag ** 2)


def laplace_fd(f, z, h):
    """-y^2 (d_xx + d_yy) f at z by second-order central differences with
    step h; requires 0 < h < Im z."""
    if not 0 < h < z.imag:
        raise ValueError("step must satisfy 0 < h < Im z")
    second = (f(z + h) + f(z - h) + f(z + 1j * h) + f(z - 1j * h) - 4 * f(z)) / h ** 2
    return -(z.imag ** 2) * second


def _partials(f, z, h):
    dx = (f(z + h) - f(z - h)) / (2 * h)
    dy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    return dx, dy


def eta_line_integral(u, v, path, steps=10000, fd_step=1e-3):
    """Composite-midpoint quadrature of the 1-form

        (v d_y u - u d_y v) dx + (u d_x v - v d_x u) dy

    along the polyline through the given vertices, with `steps` panels per
    segment.  Partial derivatives use central differences with step
    fd_step, so the whole path must stay fd_step inside the upper half
    plane.  The form is closed when u and v are Laplace eigenfunctions
    with equal eigenvalues.
    """
    vertices = list(path)
    if len(vertices) < 2:
        raise ValueError("path needs at least two vertices")
    if steps < 1:
        raise ValueError("steps must be positive")
    if min(z.imag for z in vertices) <= fd_step:
        raise ValueError("path must stay strictly above the real axis")
    total = 0.0
    for start, end in zip(vertices, vertices[1:]):
        dz = (end - start) / steps
        for k in range(steps):
            z = start + (k + 0.5) * dz
            ux, uy = _partials(u, z, fd_step)
            vx, vy = _partials(v, z, fd_step)
            uz, vz = u(z), v(z)
            total += (vz * uy - uz * vy) * dz.real + (uz * vx - vz * ux) * dz.imag
    return total


def apply_hecke_numeric(op, psi, s, zeta):
    """Evaluate the operator matrix on a vector handle at zeta > 0:
    component j sums coeff * (psi_i slashed by B) over every term (coeff, B)
    of entry (j, i)."""
    values = {}

    def component(i):
        if i not in values:
            values[i] = lambda t, idx=i: psi(t)[idx]
        return values[i]

    out = []
    for j in range(op.mu):
        acc = 0j
        for i in range(op.mu):
            for coeff, mat in op.entries[j][i]:
                acc += coeff * slash_eval(component(i), mat, s, zeta)
        out.append(acc)
    return out


def hecke_image(op, psi, s):
    """The vector handle zeta -> apply_hecke_numeric(op, psi, s, zeta)."""
    return lambda zeta: apply_hecke_numeric(op, psi, s, zeta)
