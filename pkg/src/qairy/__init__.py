"""Quantum Airy structures: exact tensors, the F_{g,n} recursion, closed forms,
transformations, a zoo of examples, Lie algebra cohomology and Young diagram
dynamics."""

from .airy_core import AiryStructure, TruncationCertificate, structure_constants, validate_relations
from .kernel import QQ, NumberField, IndexSet, SparseTensor, SeriesRing, TSeries
from .recursion import check_symmetry, fgn, free_energy
from .weyl import WeylElement, bracket, from_airy, lie_closure_check

__all__ = ["AiryStructure", "TruncationCertificate", "structure_constants", "validate_relations", "QQ",
           "NumberField", "IndexSet", "SparseTensor", "SeriesRing", "TSeries", "check_symmetry", "fgn",
           "free_energy", "WeylElement", "bracket", "from_airy", "lie_closure_check"]
__version__ = "0.1.0"
