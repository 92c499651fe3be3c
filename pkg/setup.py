#!/usr/bin/env python

from setuptools import setup

setup(
    name='pyiwasawa',
    version='0.1',
    description='Finite-level Iwasawa modules, Fitting ideals and control '
                'bounds over function fields',
    packages=['pyiwasawa', 'pyiwasawa/parse', 'pyiwasawa/tests'],
    scripts=['scripts/pyiwasawa'],
    install_requires=['ply>=3.4', 'numpy>=1.16', 'jsonschema>=3.0'],
)
