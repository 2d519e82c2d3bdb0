"""Hamming graph metrics: exact-k reachability tensors and the statistics
built on their bit-packed rows."""

from .compare import (ComparisonResult, edge_flip_bound, ged_bound, iso_distance,
                      tensor_distance)
from .errors import DisconnectedGraphError, GraphValidationError, HGMError, ParseError
from .functionals import FunctionalSpec, evaluate, phi_aggregate, tv_dispersion
from .generators import FamilySpec, analytic_oracle, generate
from .graph import Graph, connected_components, parse_edge_list, serialize_edge_list
from .hamming import (CentralityVector, DistanceDistribution, cross_scale_distance,
                      graph_distribution, hamming_rows, hc_multiscale, hc_per_scale,
                      hc_tensor_centrality, mean_pairwise_from_columns, node_distribution,
                      tensorial_distance)
from .reachability import (DistanceMatrix, ReachTensor, all_pairs_distances,
                           build_reach_tensor, exact_k_tensor, saturation_check)
from .sketch import MinHashSignature, estimate_hamming, minhash_signature
from .spectral import (Fingerprint, MdsResult, classical_mds, pairwise_distance_matrix,
                       per_scale_energies, tensor_fingerprint)
from .temporal import (TemporalTensor, build_temporal, energy_step_bound,
                       temporal_diagnostics, temporal_distance)

__version__ = "0.1.0"
