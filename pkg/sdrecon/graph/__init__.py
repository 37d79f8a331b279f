from .patch_graph import PatchCloud, NeighborList, knn, normalizing_factors, gaussian_weights
from .wgl import assemble_translated_weights, build_system, solve_system, DisconnectedComponentError
