from .build import build_field, build_mask
