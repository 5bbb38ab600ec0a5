# Configuration file for the Sphinx documentation builder.
#
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import sys
sys.path.insert(0, os.path.abspath('../../'))


# -- Project information -----------------------------------------------------

project = 'EffectOrder'
copyright = '2025, EffectOrder developers'
author = 'EffectOrder developers'

release = 'v0.1'


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',           # automatically insert docstrings from modules
    'sphinx.ext.napoleon',          # numpy-style docstring sections
    'sphinx.ext.mathjax',           # include math, rendered in the browser by MathJax
    'sphinx_rtd_theme',
]

language = 'en'

exclude_patterns = []

source_encoding = 'utf-8-sig'


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_theme_options = {
    'collapse_navigation': True,
    'sticky_navigation': False,
    'navigation_depth': 5,
    'includehidden': True,
    'titles_only': False
}


# ----------------------------------------------------------------------------
# Equation numbers, e.g., Eq.10, only for equations with a `:label:`

math_eqref_format = 'Eq.{number}'
math_number_all = False
