# Sphinx configuration for the jcarray documentation.

import os
import sys

sys.path.insert(0, os.path.abspath("../../"))
import jcarray

project = "jcarray"
copyright = "2024, jcarray developers"
author = "jcarray developers"
version = ".".join(jcarray.__version__.split(".")[:2])
release = jcarray.__version__

extensions = [
    "sphinxcontrib.programoutput",
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
]

master_doc = "index"
source_suffix = ".rst"
exclude_patterns = ["_build"]
pygments_style = "sphinx"

html_theme = "sphinxdoc"
html_show_sourcelink = False

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
    "mpi4py": ("https://mpi4py.readthedocs.io/en/stable/", None),
}

# Class docstring followed by the __init__ docstring
autoclass_content = "both"
autodoc_member_order = "bysource"
