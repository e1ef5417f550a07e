import os

#: band around 1 in which a spectral radius counts as exactly 1
UNIT_RHO_TOL = 1e-8
#: radians; phase constraints of the ray classes
RAY_TOL = 1e-9
#: relative to the absolute row sum; dominance and equipotence rows
ROW_TOL = 1e-9
#: relative to ``max(s, 1)``; M-matrix tests
M_TOL = 1e-9
#: relative to ``||A||``; pivots at or below are treated as exact zeros
PIVOT_TOL = 1e-12
HERMITIAN_TOL = 1e-12
PERRON_TOL = 1e-12
#: shift ``PERRON_SHIFT * s`` making ``B + shift * I`` primitive
PERRON_SHIFT = 1e-3
#: iterates beyond ``BLOWUP * (1 + ||b||)`` are diverged
BLOWUP = 1e12

EIG_SWEEPS_ENV = "HGS_EIG_SWEEPS"


def eig_sweep_budget(n: int) -> int:
    """
    Total number of QR sweeps the eigensolver may spend on an ``n x n`` matrix

    Defaults to ``30 * n``; the environment variable ``HGS_EIG_SWEEPS``
    overrides it with an absolute number of sweeps.
    """
    raw = os.environ.get(EIG_SWEEPS_ENV)
    if raw is None or not raw.strip():
        return 30 * max(n, 1)
    try:
        budget = int(raw)
    except ValueError:
        raise ValueError(
            f"{EIG_SWEEPS_ENV} must be a positive integer, got {raw!r}"
        ) from None
    if budget <= 0:
        raise ValueError(f"{EIG_SWEEPS_ENV} must be a positive integer, got {budget}")
    return budget
