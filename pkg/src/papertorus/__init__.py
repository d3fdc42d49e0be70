"""Paper torus prover and certifier."""

__version__ = "0.1.0"
