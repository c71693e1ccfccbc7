"""Hypercomplex number systems and the exponential of a hypercomplex argument."""

from .catalog import Catalog, builtin_systems, load, save, search
from .core import (
    HnsDef,
    HyperNum,
    add,
    check_properties,
    cyclic_group_algebra,
    multiply,
    natural_form,
    power,
    unit_element,
)
from .exponent import (
    ExpReport,
    G51Constants,
    crosscheck,
    exp_closed,
    exp_closed_g47,
    exp_closed_g51,
    exp_cyclic_dft,
    exp_eigen,
    exp_matrix,
    exp_series,
    exponential,
    g51_constants,
)
from .spectral import (
    AssocMatrix,
    IsoSignature,
    Spectrum,
    assoc_matrix,
    circulant_eigenvalues,
    discriminant_b,
    discriminant_form_g51,
    iso_signature,
    spectrum,
)

__version__ = "0.1.0"
