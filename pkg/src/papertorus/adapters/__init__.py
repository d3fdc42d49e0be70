"""File formats: torus files, certificate bundles, proof logs, CSV and search specs."""

from papertorus.adapters.bundle import CertificateBundle, read_bundle, write_bundle
from papertorus.adapters.proof_log import write_proof_log
from papertorus.adapters.search_spec import load_search_spec
from papertorus.adapters.torus_file import read_torus, write_torus

__all__ = [
    "CertificateBundle",
    "load_search_spec",
    "read_bundle",
    "read_torus",
    "write_bundle",
    "write_proof_log",
    "write_torus",
]
