"""Built-in operators, exterior algebra helpers and ground truth."""

from .entries import (
    ROLE_CONSTRAINT,
    ROLE_OPERATOR,
    CatalogEntry,
    CatalogResult,
    catalog_entry,
    catalog_get,
    catalog_names,
    curl_div,
    defigueiredo,
    divergence,
    exterior_d,
    gradient,
    higher_order_div,
    hodge_pair,
    hyperbolic_example,
    laplacian,
    lstar_bound_records,
    quadratic_collection,
    quaternion,
    regression_instances,
    saint_venant,
    saint_venant_k,
    split_laplacian,
    strange_r4,
    sym_gradient,
    sym_gradient_sk,
)
from .forms import (
    FormIndexing,
    codifferential_terms,
    exterior_derivative_terms,
    hodge_star,
    star_matrix,
    wedge,
    wedge_matrix,
)

__all__ = [
    "ROLE_CONSTRAINT",
    "ROLE_OPERATOR",
    "CatalogEntry",
    "CatalogResult",
    "catalog_entry",
    "catalog_get",
    "catalog_names",
    "curl_div",
    "defigueiredo",
    "divergence",
    "exterior_d",
    "gradient",
    "higher_order_div",
    "hodge_pair",
    "hyperbolic_example",
    "laplacian",
    "lstar_bound_records",
    "quadratic_collection",
    "quaternion",
    "regression_instances",
    "saint_venant",
    "saint_venant_k",
    "split_laplacian",
    "strange_r4",
    "sym_gradient",
    "sym_gradient_sk",
    "FormIndexing",
    "codifferential_terms",
    "exterior_derivative_terms",
    "hodge_star",
    "star_matrix",
    "wedge",
    "wedge_matrix",
]
