"""
Metrics module
3D IoU, corner error and pixel error between layouts
"""
