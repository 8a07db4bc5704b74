"""Finite-scale universal graded digraphs, HF sets, collapses and surreal terms."""
from .digraph import (
    Digraph,
    EmbeddingWitness,
    GradedDigraph,
    Grading,
    automorphisms,
    grade,
    is_acyclic,
    reachability,
    verify_embedding,
)
from .errors import GradedverseError
from .hf import EMPTY, HfSet, decode, encode, parse_set, von_neumann
from .orders import LinearOrder, Rational
from .surreal import SurrealTerm, born_by, hypnagogic_stage, leq, parse_term
from .universe import GenerativeUniverse, PatternQuery, back_and_forth, forth_embed

__version__ = "0.1.0"

__all__ = [
    "Digraph", "EmbeddingWitness", "GradedDigraph", "Grading", "automorphisms",
    "grade", "is_acyclic", "reachability", "verify_embedding", "GradedverseError",
    "EMPTY", "HfSet", "decode", "encode", "parse_set", "von_neumann",
    "LinearOrder", "Rational", "SurrealTerm", "born_by", "hypnagogic_stage",
    "leq", "parse_term", "GenerativeUniverse", "PatternQuery", "back_and_forth",
    "forth_embed",
]
