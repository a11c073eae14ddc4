from lifespan.data import datum, f_positive_g_zero, families, g_positive, g_zero_odd  # noqa: D104
from lifespan.data.datum import Family, InitialDatum
from lifespan.data.families import FAMILY_TO_DATUM_CLS, check_support, integral_case, make_data

__all__ = [
    "FAMILY_TO_DATUM_CLS",
    "Family",
    "InitialDatum",
    "check_support",
    "datum",
    "f_positive_g_zero",
    "families",
    "g_positive",
    "g_zero_odd",
    "integral_case",
    "make_data",
]
