import setuptools

DESCRIPTION = """
hbl is a python package for studying the boundary behaviour of planar
harmonic mappings numerically. It builds harmonic maps with known boundary
data, evaluates dilatations and conformal invariants (annulus moduli,
Grotzsch and Teichmuller capacities, hyperbolic distances), and runs
diagnostics for Koebe-type and Caratheodory-type criteria: divergence of
the L(m) curve integral, the radial derivative trend, capacity-based
modulus chains and multiplicity-based vanishing conditions.
"""


def get_version():
    """
    kludgy, but lets you set version in one place, and have it in the
    package
    """
    with open("hbl/__init__.py") as initfile:
        for line in initfile:
            parts = line.strip().split("=")
            if parts[0].strip() == "__version__":
                version = parts[1].strip().strip("'").strip('"')
                return version
    raise ValueError("no __version__ defined in package __init__")


setuptools.setup(name='hbl',
                 version=get_version(),
                 author='The hbl developers',
                 description=DESCRIPTION,
                 packages=setuptools.find_packages(exclude=['tests']),
                 package_data={'hbl': ['data/scenario.schema.json']},
                 install_requires=['numpy>=1.17', 'scipy>=1.12',
                                   'jsonschema>=3.2'],
                 entry_points={
                   'console_scripts': ['hbl=hbl.cli:main']},
                 keywords=['harmonic mappings', 'conformal modulus',
                           'hyperbolic geometry', 'complex analysis'],
                 classifiers=[
                   'Development Status :: 4 - Beta',
                   'Intended Audience :: Science/Research',
                   'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
                   'Programming Language :: Python :: 3.8',
                   'Topic :: Scientific/Engineering :: Mathematics'],
                 )
