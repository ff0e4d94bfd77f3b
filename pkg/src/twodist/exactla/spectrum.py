"""Exact spectrum certificates from annihilating polynomials and ranks"""

from dataclasses import asdict, dataclass, field
from math import isqrt
from typing import Dict, List, Optional, Sequence, Text, Tuple, Union

from twodist.system.exceptions import AnnihilationFails, DimensionMismatch, MultiplicityMismatch

from .elimination import rank
from .matrices import IntMatrix

__all__ = [
    "SpectrumCertificate",
    "certify_spectrum",
    "certify_spectrum_gamma",
    "certify_spectrum_seidel",
]


def __dir__():
    return __all__


Eigenvalue = Union[int, Text]
"""Integer eigenvalue or a label ``"p+sqrt(q)"`` for a quadratic irrational"""


@dataclass
class SpectrumCertificate:
    """
    Exact spectrum of an integer symmetric matrix.

    Args:
        matrix_id (``Text``): name of the certified matrix.
        eigenvalues (``List[Tuple[Eigenvalue, int]]``): eigenvalues and their
          multiplicities.
        annihilating_polynomial (``List[int]``): coefficients, leading first.
        ranks (``Dict[Text, int]``): :math:`\\mathrm{rank}(M-\\theta I)` for
          every integer eigenvalue :math:`\\theta`, keyed by ``str(theta)``.
    """

    matrix_id: Text
    eigenvalues: List[Tuple[Eigenvalue, int]]
    annihilating_polynomial: List[int]
    ranks: Dict[Text, int] = field(default_factory=dict)

    def multiplicity(self, eigenvalue: Eigenvalue) -> int:
        for value, mult in self.eigenvalues:
            if value == eigenvalue:
                return mult
        return 0

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["eigenvalues"] = [[value, mult] for value, mult in self.eigenvalues]
        return data


def _poly_multiply(left: Sequence[int], right: Sequence[int]) -> List[int]:
    out = [0] * (len(left) + len(right) - 1)
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            out[i + j] += a * b
    return out


def _shifted(matrix: IntMatrix, value: int) -> IntMatrix:
    return matrix - IntMatrix.identity(matrix.rows) * value


def _quadratic_labels(trace_coef: int, const_coef: int) -> Tuple[Text, Text]:
    """Labels of the roots of :math:`x^2 - sx + p`"""
    disc = trace_coef * trace_coef - 4 * const_coef
    if trace_coef % 2 == 0 and disc % 4 == 0:
        half, rad = trace_coef // 2, disc // 4
        return f"{half}+sqrt({rad})", f"{half}-sqrt({rad})"
    return f"({trace_coef}+sqrt({disc}))/2", f"({trace_coef}-sqrt({disc}))/2"


def certify_spectrum(
    matrix: IntMatrix,
    integer_roots: Sequence[int],
    quadratic: Optional[Tuple[int, int]] = None,
    matrix_id: Text = "M",
) -> SpectrumCertificate:
    r"""
    Certify the spectrum of a symmetric integer matrix :math:`M` with
    annihilating polynomial :math:`p(x)=\prod_\theta(x-\theta)\,q(x)`, where
    :math:`q(x)=x^2-sx+p` is an optional irreducible quadratic factor.

    The integer multiplicities follow from :math:`n-\mathrm{rank}(M-\theta I)`.
    The two conjugate roots of :math:`q` share the remaining multiplicity
    equally, which the rational trace forces, and the trace identity is then
    checked exactly.

    Args:
        matrix (~twodist.exactla.matrices.IntMatrix): symmetric matrix.
        integer_roots (``Sequence[int]``): distinct integer eigenvalues.
        quadratic (``Tuple[int, int]``, default ``None``): :math:`(s, p)` of
          the quadratic factor.
        matrix_id (``Text``, default ``"M"``): name stored in the certificate.

    Raises:
        :obj:`~twodist.system.exceptions.AnnihilationFails`: if :math:`p(M)\neq 0`.
        :obj:`~twodist.system.exceptions.MultiplicityMismatch`: if the
          multiplicities do not add up to :math:`n` or violate the trace.

    Returns:
        ~twodist.exactla.spectrum.SpectrumCertificate:
        the certified spectrum.
    """
    if not matrix.is_symmetric():
        raise DimensionMismatch("Spectrum certificates need a symmetric matrix.")
    size = matrix.rows
    polynomial, product = [1], IntMatrix.identity(size)
    for theta in integer_roots:
        polynomial = _poly_multiply(polynomial, [1, -theta])
        product = product @ _shifted(matrix, theta)
    if quadratic is not None:
        s, p = quadratic
        disc = s * s - 4 * p
        assert disc < 0 or isqrt(disc) ** 2 != disc, "Quadratic factor has rational roots."
        polynomial = _poly_multiply(polynomial, [1, -s, p])
        square = matrix @ matrix
        product = product @ (square - matrix * s + IntMatrix.identity(size) * p)
    if not product.is_zero():
        raise AnnihilationFails(f"{polynomial} does not annihilate {matrix_id}.")

    ranks, eigenvalues = {}, []
    for theta in integer_roots:
        ranks[str(theta)] = rank(_shifted(matrix, theta))
        eigenvalues.append((theta, size - ranks[str(theta)]))
    remaining = size - sum(mult for _, mult in eigenvalues)
    trace = matrix.trace()
    integer_trace = sum(theta * mult for theta, mult in eigenvalues)

    if quadratic is None:
        if remaining != 0:
            raise MultiplicityMismatch(f"Multiplicities of {matrix_id} miss {remaining} dimensions.")
        if integer_trace != trace:
            raise MultiplicityMismatch(f"Trace of {matrix_id} is {trace}, spectrum gives {integer_trace}.")
    else:
        if remaining <= 0 or remaining % 2:
            raise MultiplicityMismatch(
                f"{remaining} dimensions cannot be shared by two conjugate eigenvalues."
            )
        # each conjugate root contributes s/2 per dimension to the trace
        if 2 * integer_trace + s * remaining != 2 * trace:
            raise MultiplicityMismatch(f"Trace of {matrix_id} is inconsistent with its spectrum.")
        plus, minus = _quadratic_labels(s, p)
        eigenvalues += [(plus, remaining // 2), (minus, remaining // 2)]

    return SpectrumCertificate(
        matrix_id=matrix_id,
        eigenvalues=eigenvalues,
        annihilating_polynomial=polynomial,
        ranks=ranks,
    )


def certify_spectrum_gamma(adjacency: IntMatrix) -> SpectrumCertificate:
    r"""
    Spectrum of :math:`A(\Gamma)` from
    :math:`(A-27I)(A+3I)(A^2-162A+396I)=0`: eigenvalues :math:`27^{22}`,
    :math:`(-3)^{252}` and :math:`81\pm\sqrt{6165}` with multiplicity one each.
    """
    return certify_spectrum(adjacency, [27, -3], quadratic=(162, 396), matrix_id="A(Gamma)")


def certify_spectrum_seidel(seidel: IntMatrix) -> SpectrumCertificate:
    """Spectrum of :math:`S` from :math:`(S-55I)(S+5I)=0`: :math:`55^{23}` and :math:`(-5)^{253}`"""
    return certify_spectrum(seidel, [55, -5], matrix_id="S")
