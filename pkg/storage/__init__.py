"""
Storage module
Signals, layout and annotation files, panorama images and visualisations
"""
