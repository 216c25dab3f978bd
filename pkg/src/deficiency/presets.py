"""Bundled example groups."""
from dataclasses import dataclass
from functools import lru_cache

from .cosets import PermutationImage, regular_images, todd_coxeter
from .presentation import parse_presentation

TWIST_SPUN_TREFOIL = "< t, x | x^3 = 1, t*x*t^-1 = x^-1 >"
# Perfect presentation of the binary icosahedral group (order 120).
BINARY_ICOSAHEDRAL = "< x, y | x^5 = y^3 = (x*y)^2 >"
D_FREE_D = ("< x1, y1, x2, y2 | x1^5 = y1^3 = (x1*y1)^2, "
            "x2^5 = y2^3 = (x2*y2)^2 >")


@dataclass(frozen=True)
class Preset:
    name: str
    text: str
    description: str
    phi: tuple = None
    has_kernel: bool = False

    @property
    def presentation(self):
        return _parsed(self.text)

    def kernel_images(self):
        if not self.has_kernel:
            raise ValueError(f"preset {self.name!r} has no bundled homomorphism")
        return fold_map_images()


@lru_cache(maxsize=None)
def _parsed(text):
    return parse_presentation(text)


@lru_cache(maxsize=None)
def binary_icosahedral_regular():
    """Right-regular permutation action of the binary icosahedral group."""
    return regular_images(todd_coxeter(_parsed(BINARY_ICOSAHEDRAL)))


def fold_map_images():
    """Images of x1, y1, x2, y2 under the fold map D * D -> D."""
    reg = binary_icosahedral_regular()
    return PermutationImage(reg.degree, reg.images * 2)


PRESETS = {
    "twist-spun-trefoil": Preset(
        "twist-spun-trefoil", TWIST_SPUN_TREFOIL,
        "group of the 2-twist spun trefoil; phi(t) = 1, phi(x) = 0", phi=(1, 0)),
    "binary-icosahedral": Preset(
        "binary-icosahedral", BINARY_ICOSAHEDRAL,
        "binary icosahedral group D: perfect, order 120, deficiency-0 presentation"),
    "DxD": Preset(
        "DxD", D_FREE_D,
        "free product D * D with the fold map onto D", has_kernel=True),
}


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
