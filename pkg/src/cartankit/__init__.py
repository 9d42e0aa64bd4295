"""Exact inverse Cartan matrices of simple Lie algebras and basic Lie superalgebras."""
from .catalog import Family, FamilySpec, InvalidParams, build, build_simple, build_super, size_of, validate
from .closed_form import entry_evaluator, inverse_exceptional, inverse_matrix, special_vector
from .exact_linalg import Matrix, SingularError, Vector, invert_exact, parse_rational, format_rational
from .infinite import InfFamily, InfFamilySpec, Window, inf_cartan_entry, inf_inverse_entry, materialize, verify_window
from .proof_path import inverse_via_proof_path

__version__ = "0.1.0"
