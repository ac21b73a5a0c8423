"""
Layout module
Manhattan layouts, boundary signals and the 1D representation
"""
