"""adegraph - exact positivity and ADE reduction for signed graphs."""
__version__ = "0.1.0"
