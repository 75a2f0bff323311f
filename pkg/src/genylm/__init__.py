"""Generalized spherical harmonics for l=2 quantized along an arbitrary axis."""
from .amplitudes import amplitude, amplitude_matrix
from .harmonics import (
    AngularPosition, AxisVariant, HarmonicFamily, Source, gen_ylm_closed_x, gen_ylm_closed_y,
    gen_ylm_closed_z, gen_ylm_composed, std_ylm_l2, substitute_x_axis, substitute_y_axis,
)
from .quadrature import SphereGrid, gauss_legendre_nodes, sphere_grid
from .verify import (
    apply_axis_angular_momentum, eigen_residual, inner_product, orthonormality_report,
    parity_check, unitarity_check,
)
from .wigner import Direction, HalfInt, rotation_coefficients, small_d

__version__ = "0.1.0"
