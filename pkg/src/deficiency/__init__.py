"""Exact deficiency computations for finitely presented groups and Z[t, t^-1]-modules."""
__version__ = "0.1.0"

from .alexander import (LambdaPresentation, ZHomomorphism, cover_module_presentation,
                        fox_derivative, fox_jacobian, fox_module)
from .certificates import (Certificate, Step, hw_family_violation, hw_inequality,
                           obstruction_certificate, paper_pipeline, replay,
                           step_iterated_cover, step_quotient_summand)
from .cosets import (CosetTable, PermutationImage, kernel_coset_table, todd_coxeter,
                     validate_coset_table)
from .errors import (CapacityExceeded, DeficiencyError, EmptyRelatorError,
                     IncompatibleTable, InvalidSpecialization, NotRegularSequence,
                     NotStructured, NotSurjective, PresentationSyntaxError,
                     RelatorPhiNonzero, RelatorViolation, UnknownGeneratorError,
                     ZeroPolynomialError)
from .laurent import (LambdaMatrix, LaurentPolynomial, parse_laurent,
                      rank_over_fraction_field, specialize, specialize_corank)
from .presentation import (GroupPresentation, abelian_invariants, abelianization_matrix,
                           deficiency_of_presentation, format_presentation, free_group,
                           free_product, is_perfect, parse_presentation, parse_word)
from .rewriting import (SchreierTransversal, finite_index_deficiency_bound,
                        schreier_transversal, subgroup_presentation)
from .smith import invariant_factors, smith_normal_form
from .structured import (StructuredModule, classify_structured, ext2_structured,
                         format_module, ideal_equal, is_regular_pair,
                         min_generators_lower_bound, module_deficiency_bounds,
                         module_rank, mv_assembly, parse_module)
from .words import Word

__all__ = [
    "invariant_factors", "smith_normal_form",
    "CapacityExceeded", "Certificate", "CosetTable", "DeficiencyError",
    "EmptyRelatorError", "GroupPresentation", "IncompatibleTable",
    "InvalidSpecialization", "LambdaMatrix", "LambdaPresentation", "LaurentPolynomial",
    "NotRegularSequence", "NotStructured", "NotSurjective", "PermutationImage",
    "PresentationSyntaxError", "RelatorPhiNonzero", "RelatorViolation",
    "SchreierTransversal", "Step", "StructuredModule", "UnknownGeneratorError", "Word",
    "ZHomomorphism", "ZeroPolynomialError", "abelian_invariants",
    "abelianization_matrix", "classify_structured", "cover_module_presentation",
    "deficiency_of_presentation", "ext2_structured", "finite_index_deficiency_bound",
    "format_module", "format_presentation", "fox_derivative", "fox_jacobian",
    "fox_module", "free_group", "free_product", "hw_family_violation", "hw_inequality",
    "ideal_equal", "is_perfect", "is_regular_pair", "kernel_coset_table",
    "min_generators_lower_bound", "module_deficiency_bounds", "module_rank",
    "mv_assembly", "obstruction_certificate", "paper_pipeline", "parse_laurent",
    "parse_module", "parse_presentation", "parse_word", "rank_over_fraction_field",
    "replay", "schreier_transversal", "specialize", "specialize_corank",
    "step_iterated_cover", "step_quotient_summand", "subgroup_presentation",
    "todd_coxeter", "validate_coset_table",
]
