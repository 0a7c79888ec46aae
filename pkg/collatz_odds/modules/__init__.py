"""
Descent, ascent, pattern and verification modules
"""
