# Sphinx configuration for the hgs documentation
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "../..")))

import hgs  # noqa: E402

project = 'hgs'
copyright = '2026, Eileen Kuehn, Max Fischer'
author = 'Eileen Kuehn, Max Fischer'
version = release = hgs.__version__

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinxcontrib.contentui'
]
autodoc_member_order = 'bysource'

templates_path = ['_templates']
exclude_patterns = []

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']

intersphinx_mapping = {
    "python": ('https://docs.python.org/3', None),
    "numpy": ('https://numpy.org/doc/stable/', None),
    "scipy": ('https://docs.scipy.org/doc/scipy/', None),
}
