"""qpb: exact computer algebra for quantum principal bundles over finite
quantum groups, with a mechanical verification suite for the canonical
braiding, translation maps, gauge coalgebras and degree-truncated
differential calculus."""

__version__ = "0.1.0"
