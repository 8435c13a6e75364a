# Sphinx configuration of the bbckit documentation.

import os
import re
import sys
sys.path.insert(0, os.path.abspath('..'))


# -- Project information -----------------------------------------------------

project = 'bbckit'
copyright = '2026 bbckit contributors'
author = 'bbckit contributors'

with open('../bbckit/__init__.py') as f:
    release = version = re.search(
        r'^__version__\s*=\s*[\'"]([^\'"]*)[\'"]', f.read(), re.MULTILINE
    ).group(1)


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.intersphinx',
    'sphinx.ext.viewcode',
    'pallets_sphinx_themes',
]

# Docstrings are numpy style.
napoleon_google_docstring = False
napoleon_numpy_docstring = True
autodoc_member_order = 'bysource'

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'cachetools': ('https://cachetools.readthedocs.io/en/stable/', None),
    'click': ('https://click.palletsprojects.com/en/8.1.x/', None),
}

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']


# -- Options for HTML output -------------------------------------------------

html_theme = 'click'
html_title = f'bbckit {release}'
