"""Model operator families with nested trial spaces."""
from typing import Dict, Union

from ..errors import UnknownModelError
from ..linalg import Matrix
from .base import KnownEigenvalue, ModelFamily, ReferenceData, SpectralBand
from .block import (
    AdvectionBlockModel,
    MHDBlockModel,
    P1BlockModel,
    closed_form_pair,
    model2_assemble,
    model3_assemble,
)
from .fourier import SawtoothFourierModel, model1_assemble


FAMILIES: Dict[str, ModelFamily] = {
    family.id: family
    for family in (SawtoothFourierModel(), AdvectionBlockModel(), MHDBlockModel())
}

FamilyLike = Union[str, ModelFamily]


def get_family(family: FamilyLike) -> ModelFamily:
    """Look up a model family by id, passing family instances through."""
    if isinstance(family, ModelFamily):
        return family

    try:
        return FAMILIES[family]
    except KeyError as error:
        known = ", ".join(sorted(FAMILIES))
        raise UnknownModelError(
            f"unknown model {family!r}; expected one of {known}"
        ) from error


def inclusion_matrix(family: FamilyLike, coarse: int, fine: int) -> Matrix:
    """Get the matrix expressing a coarse trial basis in a fine one."""
    return get_family(family).inclusion_matrix(coarse, fine)


def reference_spectrum(family: FamilyLike) -> ReferenceData:
    """Get the published and closed-form spectral data of a family."""
    return get_family(family).reference_spectrum()


__all__ = [
    "AdvectionBlockModel",
    "FAMILIES",
    "KnownEigenvalue",
    "MHDBlockModel",
    "ModelFamily",
    "P1BlockModel",
    "ReferenceData",
    "SawtoothFourierModel",
    "SpectralBand",
    "closed_form_pair",
    "get_family",
    "inclusion_matrix",
    "model1_assemble",
    "model2_assemble",
    "model3_assemble",
    "reference_spectrum",
]
