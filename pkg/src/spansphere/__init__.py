"""spansphere: spanning simplicial spheres in dense k-uniform hypergraphs.

Library layout:
  hypergraph  - k-graphs, degrees, tight connectivity, covering walks
  complexes   - simplicial complexes and graded sphere verification
  spheres     - partite and path-blow-up sphere constructions
  matching    - Hall-saturating and perfect matchings
  allocation  - blow-up filling and the allocation pipeline
  chain       - chain certificates, generation, end-to-end assembly
  extremal    - toy-scale property graphs and blow-up extraction
  cli         - the `spansphere` command
"""

from .hypergraph import Hypergraph, TightWalk
from .complexes import SimplicialComplex, SphereCertificate, CertLevel
from .allocation import Blowup

__all__ = [
    "Hypergraph",
    "TightWalk",
    "SimplicialComplex",
    "SphereCertificate",
    "CertLevel",
    "Blowup",
]
