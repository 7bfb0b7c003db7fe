"""
How many Paulian generators a code can carry
"""
from typing import Optional

from layer_1_algebra.pauli import count_low_weight
from models.synthesis import CapacityPlan
from utils.errors import CapacityExceeded, InvalidInput
from utils.logger import get_logger

logger = get_logger(__name__)


def ceil_log2(x: int) -> int:
    return (x - 1).bit_length()


def floor_log2(x: int) -> int:
    return x.bit_length() - 1


def capacity_plan(family_size: int, dim_ambient: Optional[int], dim_code: int,
                  n: Optional[int] = None, d: Optional[int] = None,
                  bosonic: bool = False) -> CapacityPlan:
    """
    Choose the generator count m for a family of ``family_size`` errors

    ceil mode (m = ceil(log2 |F|), every member gets a syndrome) when
    2^m dim(H_C) <= dim(H) or the ambient stands in for an infinite space;
    otherwise floor mode on the first 2^floor(log2 |F|) members.

    m is never below 1: the family {I} still gets one generator and one
    excess syndrome, so a code with dim(H_C) = dim(H) raises
    CapacityExceeded rather than planning m = 0.

    Args:
        family_size: |F|
        dim_ambient: dim(H), None for an unbounded (bosonic) space
        dim_code: dim(H_C)
        n, d: Qubit count and declared distance, used for the low-weight count bound
        bosonic: Treat the ambient as infinite-dimensional

    Raises:
        InvalidInput: nonpositive sizes
        CapacityExceeded: not even floor mode fits
    """
    if family_size < 1 or dim_code < 1 or (dim_ambient is not None and dim_ambient < 1):
        raise InvalidInput("family size and dimensions must be positive")

    bound = None
    if n is not None and d is not None:
        bound = count_low_weight(n, (d - 1) // 2)

    m_ceil = max(1, ceil_log2(family_size))
    m_floor = max(1, floor_log2(family_size))
    unbounded = bosonic or dim_ambient is None

    if unbounded or 2 ** m_ceil * dim_code <= dim_ambient:
        plan = CapacityPlan(family_size, m_ceil, 'ceil', True, dim_code, dim_ambient, bound)
    elif 2 ** m_floor * dim_code <= dim_ambient and 2 ** m_floor <= family_size:
        plan = CapacityPlan(family_size, m_floor, 'floor', False, dim_code, dim_ambient, bound)
        logger.warning(f"Only {2 ** m_floor} of {family_size} family members fit: "
                       f"2^{m_ceil} x {dim_code} > {dim_ambient}")
    else:
        raise CapacityExceeded(
            f"dimension obstruction: {dim_code} x 2^m exceeds {dim_ambient} for every usable m "
            f"(|F| = {family_size})",
            {'family_size': family_size, 'dim_code': dim_code, 'dim_ambient': dim_ambient},
        )

    logger.info(f"Capacity plan: |F|={family_size}, m={plan.m}, mode={plan.mode}, "
                f"excess syndromes={plan.excess_syndromes}")
    return plan
