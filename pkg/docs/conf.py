# Sphinx configuration of the hybrid-varswap documentation.
import os
import sys
import sphinx_rtd_theme

sys.path.insert(0, os.path.abspath('..'))

project = 'hybrid-varswap'
copyright = '2026, hybrid-varswap developers'
author = 'hybrid-varswap developers'
release = 'v0.1.0'

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx_rtd_theme'
]

templates_path = ['_templates']
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

autoclass_content = 'both'

html_theme = 'sphinx_rtd_theme'
autodoc_mock_imports = ['torch']
master_doc = 'index'
