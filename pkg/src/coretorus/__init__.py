"""Layered solid tori, normal meridian discs, parallelity bundles and
PL core-curve certificates, all in exact arithmetic."""

from .bundle import (BundleComponent, ClaimsReport, CutComplex, bundle_prime,
                     check_claims, cut_along, parallelity_bundle)
from .curves import (CurveCertificate, PLCurve, Segment, TransverseCurve,
                     algebraic_intersection, arcs_per_face, curve_h1_class,
                     face_bound_check, is_embedded, make_61_curve,
                     min_boundary_precore_length, push_off, tet_bound_check)
from .geometry import GeometrizedSurface, geometrize
from .homology import (HomologySummary, MeridianCalibration, SolidTorusReport,
                       boundary_h1, calibrate, first_homology, manifold_h1,
                       smith_normal_form, solid_torus_candidate)
from .layered import BASE_T0_TEXT, LayeredTriangulation, base_t0, family, layer
from .normal import (NormalVector, check_admissible, check_matching,
                     curve_slopes, edge_weight, min_curve_length, reconstruct,
                     total_weight)
from .search import (BudgetExhausted, DiscSearchResult, MeridianDisc,
                     MinimalDiscResult, SearchBudget, enumerate_admissible,
                     find_meridian_discs, minimal_complexity_disc, verify_61_1,
                     verify_61_2)
from .slopes import (Slope, SlopeTriple, at_least_golden_power, binet_check,
                     elementary_move, fib, intersection, lucas, mediant,
                     normalize_slope, slope_seq)
from .triangulation import (ParseError, SkeletonSummary, Triangulation,
                            TriangulationError, parse_tri, serialize_tri)
