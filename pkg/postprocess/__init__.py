"""
Post-processing module
Manhattan layout reconstruction from 1D boundary signals
"""
