"""Finite-dimensional algebras from quivers with relations: normal-form bases,
standard modules and filtrations over a poset of vertices, heredity chains,
and Ext/Tor certificates for truncation quotients."""

__version__ = "0.1.0"

from .errors import StratkitError
from .fields import GF, QQ
from .presentation import load_presentation, parse_presentation, render_presentation
from .rewriting import build_algebra, complete_rewriting, normal_form
from .algebra import AlgebraTable
from .modules import Module, ModuleMap, hom_space, is_isomorphic, regular_projective, support
from .radical import radical_and_simples
from .stratification import (
    Poset,
    check_hypotheses,
    heredity_chain,
    standard_filtration,
    standard_module,
    truncate,
)
from .homological import (
    embedding_certificate,
    ext_dims,
    global_dimension,
    projective_resolution,
    right_flat_dimension,
    spectral_corner_check,
    tor_dims,
)

__all__ = [
    "AlgebraTable", "GF", "Module", "ModuleMap", "Poset", "QQ", "StratkitError",
    "build_algebra", "check_hypotheses", "complete_rewriting", "embedding_certificate",
    "ext_dims", "global_dimension", "heredity_chain", "hom_space", "is_isomorphic",
    "load_presentation", "normal_form", "parse_presentation", "projective_resolution",
    "radical_and_simples", "regular_projective", "render_presentation",
    "right_flat_dimension", "spectral_corner_check", "standard_filtration",
    "standard_module", "support", "tor_dims", "truncate",
]
