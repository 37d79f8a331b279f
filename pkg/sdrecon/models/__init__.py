from .build import build_reconstruction_method, build_compression_method, build_ldmm
