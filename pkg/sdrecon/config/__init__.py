"""Configuration"""

from yacs.config import CfgNode


def purge_cfg(cfg):
    """Drop the option nodes of methods and generators that are not selected.

    A node with a TYPE key keeps only the child nodes whose key starts with
    that TYPE; other nodes are purged recursively. MODEL.TYPE = "DCT" drops
    MODEL.LDMM, and INPUT.GENERATOR.TYPE = "shock" keeps INPUT.GENERATOR.shock
    alone among the generator options. Leaf values are never removed.

    Args:
        cfg (CfgNode): config, modified in place

    """
    selected = cfg.get("TYPE", None)
    unselected = [k for k, v in cfg.items()
                  if isinstance(v, CfgNode) and selected is not None and not k.startswith(selected)]
    for k in unselected:
        del cfg[k]
    for v in cfg.values():
        if isinstance(v, CfgNode):
            purge_cfg(v)
