"""Certifying solver for crosses and two disjoint paths in acyclic digraphs."""

from __future__ import annotations

from .certificates import CrossCertificate, DiscEmbedding, verify_cross, verify_embedding
from .engine import solve
from .errors import LinkageError
from .generator import GenConfig, GenMode, generate
from .graph import Digraph, Instance, Mode, validate_instance
from .normalize import GeneralInstance, decide_linkage, normalize
from .oracle import brute_force_cross, dag_two_disjoint_paths

__all__ = [
    "CrossCertificate",
    "DiscEmbedding",
    "Digraph",
    "GenConfig",
    "GenMode",
    "GeneralInstance",
    "Instance",
    "LinkageError",
    "Mode",
    "brute_force_cross",
    "dag_two_disjoint_paths",
    "decide_linkage",
    "generate",
    "normalize",
    "solve",
    "validate_instance",
    "verify_cross",
    "verify_embedding",
]
