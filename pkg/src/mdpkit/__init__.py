"""mdpkit: the maximum distance problem on polygonal domains, explored
through coverage-certified minimum spanning trees.

Find short trees whose closed s-neighborhood covers a compact polygonal
region: certified coverage decisions, Euclidean MSTs with Steiner-style
improvement, constructive prong/spoke covers with exact excess accounting,
and a feasibility-preserving annealer for the n-center spanning length.
"""

from .coverage import (
    CoverageVerdict,
    DistInterval,
    ToleranceError,
    certify_cover,
    max_distance,
    min_cover_radius,
)
from .geom import (
    Domain,
    DomainError,
    GeometryError,
    Point2,
    Polyline,
    Segment,
    Tree,
    disk_polygon,
    dist_point_segment,
    dist_point_tree,
    h1_length,
    hausdorff_distance,
    point_in_domain,
    stadium_polygon,
)
from .optimize import (
    ConfigState,
    OptimizerParams,
    init_hex_cover,
    local_search,
    prune_redundant,
    sigma_n_curve,
)
from .prongs import (
    CoverageRejectedError,
    ProngCover,
    RectPiece,
    SegmentProngParams,
    SpokeSet,
    buffered_polyline_domain,
    polyline_prong_cover,
    prong_cover_domain,
    segment_prong_cover,
    spoke_cover,
)
from .spanning import (
    CenterSet,
    MSTResult,
    UnionFind,
    brute_force_mst,
    fermat_point,
    kruskal_mst,
    steinerize,
)

__version__ = "0.1.0"

__all__ = [
    "CenterSet", "ConfigState", "CoverageRejectedError", "CoverageVerdict",
    "DistInterval", "Domain", "DomainError", "GeometryError", "MSTResult",
    "OptimizerParams", "Point2", "Polyline", "ProngCover", "RectPiece",
    "Segment", "SegmentProngParams", "SpokeSet", "ToleranceError", "Tree",
    "UnionFind", "brute_force_mst", "buffered_polyline_domain", "certify_cover",
    "disk_polygon", "dist_point_segment", "dist_point_tree", "fermat_point",
    "h1_length", "hausdorff_distance", "init_hex_cover", "kruskal_mst",
    "local_search", "max_distance", "min_cover_radius", "point_in_domain",
    "polyline_prong_cover", "prong_cover_domain", "prune_redundant",
    "segment_prong_cover", "sigma_n_curve", "spoke_cover", "stadium_polygon",
    "steinerize",
]
