# __init__.py
"""
Marks this directory as the hypoindex test package.
"""
