"""Line-bundle resolutions and global Ext."""
from .globalext import (ExtInconsistent, GlobalExt, NotInUPerp, compute_global_ext, global_ext,
                        hom_double_complex_ext)
from .resolve import LineBundleResolution, ResolutionError, resolve

__all__ = ["ExtInconsistent", "GlobalExt", "NotInUPerp", "compute_global_ext", "global_ext",
           "hom_double_complex_ext", "LineBundleResolution", "ResolutionError", "resolve"]
