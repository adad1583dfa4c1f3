"""Runtime knobs shared by the Fock-space layer and the CLI."""

import os

DEFAULT_CAP = 8
PRUNE_TOL = 1e-12
NORM_TOL = 1e-9

CAP_ENV = "SSRC_BQC_CAP"
NO_NUMBA_ENV = "SSRC_BQC_NO_NUMBA"


class ResourceError(RuntimeError):
    """Raised when a Fock expansion would exceed the configured photon cap."""


def resource_cap(cap: int | None = None) -> int:
    """Photon-number cap for full multimode expansions.

    An explicit argument wins, then the ``SSRC_BQC_CAP`` environment
    variable, then :data:`DEFAULT_CAP`.
    """
    if cap is not None:
        return int(cap)
    env = os.environ.get(CAP_ENV)
    if env:
        return int(env)
    return DEFAULT_CAP


def check_cap(n_photons: int, cap: int | None = None, what: str = "expansion") -> None:
    limit = resource_cap(cap)
    if n_photons > limit:
        raise ResourceError(
            f"{what} with N={n_photons} exceeds the photon cap {limit} "
            f"(raise it with --cap or {CAP_ENV})"
        )
