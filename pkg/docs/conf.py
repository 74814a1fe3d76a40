# -*- coding: utf-8 -*-
#
# Sphinx configuration for the hbl documentation.

import sys
import os

# document the development tree, not an installed copy
sys.path.insert(0, os.path.abspath('../'))


def _version():
    with open(os.path.join(os.path.dirname(__file__), '..', 'hbl',
                           '__init__.py')) as initfile:
        for line in initfile:
            parts = line.strip().split("=")
            if parts[0].strip() == "__version__":
                return parts[1].strip().strip("'").strip('"')
    return 'unknown'


extensions = ['sphinx.ext.autodoc', 'sphinx.ext.doctest',
              'sphinx.ext.mathjax', 'sphinx.ext.napoleon']

napoleon_google_docstring = True
napoleon_numpy_docstring = False
autodoc_member_order = 'bysource'

source_suffix = '.rst'
master_doc = 'index'

project = u'hbl'
copyright = u'the hbl developers'
release = _version()
version = '.'.join(release.split('.')[:2])

exclude_patterns = ['_build']
pygments_style = 'sphinx'
html_theme = 'default'
htmlhelp_basename = 'hbldoc'

latex_elements = {
    'papersize': 'a4paper',
    'pointsize': '11pt',
}
latex_documents = [
    ('index', 'hbl.tex', u'hbl Documentation', u'the hbl developers',
     'manual'),
]

man_pages = [
    ('index', 'hbl', u'hbl Documentation', [u'the hbl developers'], 1)
]
