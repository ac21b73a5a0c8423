"""
Synthetic module
Random Manhattan rooms and the exact signals they render to
"""
