"""Domain models and errors shared by every omviz module."""
