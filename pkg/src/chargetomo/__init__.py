"""Symplectic tomograms of a charge in a uniform magnetic field driven by a
uniform, time-dependent electric field."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    ChargeTomoError,
    CoherentLabel,
    FockLabel,
    Grid1D,
    Grid2D,
    GridCoverageError,
    InvalidArgumentError,
    NumericError,
    RangeError,
    SymplecticFrame,
    TwoModeFrame,
    UnsupportedFrameError,
    optical_frame,
    rescale_frame,
    rescale_two_mode,
)
from .drive import (  # noqa: E402
    ConstantDrive,
    SinusoidalDrive,
    TabulatedDrive,
    TrajectoryPoint,
    ZeroDrive,
    integrate_trajectory,
    trajectory_at,
)
from .wavefunctions import (  # noqa: E402
    WavefunctionGrid,
    coherent_wavefunction_const,
    coherent_wavefunction_var,
    fock_wavefunction_const,
)
from .frft import NumericTomogram1D, tomogram_1d, tomogram_2d  # noqa: E402
from .analytic import (  # noqa: E402
    GaussianModeTomogram,
    const_field_tomogram,
    evaluate_gaussian,
    var_field_tomogram,
)
from .hermite import fock_tomogram, hermite_2var  # noqa: E402
from .reconstruction import (  # noqa: E402
    DensityMatrixGrid1D,
    fidelity_pure,
    fidelity_tomographic,
    reconstruct_density_1d,
)

__all__ = [
    "__version__",
    "ChargeTomoError",
    "CoherentLabel",
    "FockLabel",
    "Grid1D",
    "Grid2D",
    "GridCoverageError",
    "InvalidArgumentError",
    "NumericError",
    "RangeError",
    "SymplecticFrame",
    "TwoModeFrame",
    "UnsupportedFrameError",
    "optical_frame",
    "rescale_frame",
    "rescale_two_mode",
    "ConstantDrive",
    "SinusoidalDrive",
    "TabulatedDrive",
    "TrajectoryPoint",
    "ZeroDrive",
    "integrate_trajectory",
    "trajectory_at",
    "WavefunctionGrid",
    "coherent_wavefunction_const",
    "coherent_wavefunction_var",
    "fock_wavefunction_const",
    "NumericTomogram1D",
    "tomogram_1d",
    "tomogram_2d",
    "GaussianModeTomogram",
    "const_field_tomogram",
    "evaluate_gaussian",
    "var_field_tomogram",
    "fock_tomogram",
    "hermite_2var",
    "DensityMatrixGrid1D",
    "fidelity_pure",
    "fidelity_tomographic",
    "reconstruct_density_1d",
]
