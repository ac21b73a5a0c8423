"""
Geometry module
Pixel, UV sphere and camera-frame conversions for equirectangular panoramas
"""
