"""Clique immersions in graph products: certificates, constructions, and exact search."""

from .certificates import ImmersionCertificate, Verdict, read_certificate, verify, write_certificate
from .graph import Graph, generate, read_graph, write_graph
from .products import ProductKind, power, product
from .search import SearchReport, exact_immersion_number, splitoff_oracle

__all__ = [
    "Graph", "generate", "read_graph", "write_graph",
    "ProductKind", "product", "power",
    "ImmersionCertificate", "Verdict", "verify", "read_certificate", "write_certificate",
    "SearchReport", "exact_immersion_number", "splitoff_oracle",
]
