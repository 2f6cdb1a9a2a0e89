"""Structure-equation identities for a connection matrix at a point.

Given coframe-valued 1-forms ``eta``, a square connection matrix ``omega``
and a structure differential, this module forms torsion and curvature and
checks the two Bianchi-type identities

    d(Theta) + omega ^ Theta - Omega ^ eta = 0
    d(Omega) - Omega ^ omega + omega ^ Omega = 0

which hold exactly whenever d o d = 0 on the structure data.
"""

from dataclasses import dataclass

from .exterior import (FormMatrix, exterior_derivative, is_integrable, matrix_d,
                       matrix_wedge)


@dataclass(frozen=True)
class ConnectionData:
    eta: tuple
    omega: FormMatrix
    sd: object
    orthonormal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "eta", tuple(self.eta))
        if self.omega.rows != self.omega.cols:
            raise ValueError("connection matrix must be square")
        if self.omega.degree != 1:
            raise ValueError("connection matrix must hold 1-forms")
        if self.eta and len(self.eta) != self.omega.rows:
            raise ValueError("eta has length %d, omega is %dx%d"
                             % (len(self.eta), self.omega.rows, self.omega.cols))
        if any(f.degree != 1 for f in self.eta):
            raise ValueError("eta must consist of 1-forms")
        if self.orthonormal and not check_skew(self.omega):
            raise ValueError("orthonormal frame requires a skew connection matrix")


class NonIntegrableError(ValueError):
    """The structure differential does not satisfy d o d = 0."""


def _column(forms):
    return FormMatrix([[f] for f in forms])


def curvature_form(cd):
    """Omega = d(omega) + omega ^ omega."""
    return matrix_d(cd.omega, cd.sd) + matrix_wedge(cd.omega, cd.omega)


def torsion_form(cd):
    """Theta_i = d(eta_i) + sum_j omega_ij ^ eta_j."""
    if len(cd.eta) != cd.omega.rows:
        raise ValueError("torsion needs one eta per row of omega")
    col = matrix_wedge(cd.omega, _column(cd.eta))
    return [exterior_derivative(e, cd.sd) + col[i, 0] for i, e in enumerate(cd.eta)]


def _require_integrable(sd):
    if not is_integrable(sd):
        raise NonIntegrableError("structure differential has nonzero d o d; "
                                 "the Bianchi identities do not apply")


def first_bianchi_defect(cd):
    _require_integrable(cd.sd)
    theta = _column(torsion_form(cd))
    omega2 = curvature_form(cd)
    lhs = matrix_d(theta, cd.sd) + matrix_wedge(cd.omega, theta)
    defect = lhs - matrix_wedge(omega2, _column(cd.eta))
    return [defect[i, 0] for i in range(defect.rows)]


def second_bianchi_defect(cd):
    _require_integrable(cd.sd)
    big = curvature_form(cd)
    return (matrix_d(big, cd.sd) - matrix_wedge(big, cd.omega)
            + matrix_wedge(cd.omega, big))


def check_skew(m):
    if m.rows != m.cols:
        raise ValueError("skewness needs a square matrix")
    for i in range(m.rows):
        if not m[i, i].is_zero():
            return False
        for j in range(i + 1, m.cols):
            if not (m[i, j] + m[j, i]).is_zero():
                return False
    return True
