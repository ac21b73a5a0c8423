"""
Pano Stretch module
Anisotropic scene stretch of panoramas, layouts and boundary signals
"""
