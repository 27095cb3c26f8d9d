"""
IsoKin

Isotropic planar point sets, the n-revolute manipulators they induce and the
length that makes their Jacobians dimensionally homogeneous.
"""
__version__ = "1.0.0"
