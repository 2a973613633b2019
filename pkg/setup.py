# -*- coding: utf-8-*-
from setuptools import setup, find_packages
setup(
name='urbanCoverage',
version='0.1.0',
packages=find_packages(exclude=['urbanCoverage.tests']),
description='Drop-based simulator of dense-urban outdoor and outdoor-to-indoor coverage from 3.5 to 28 GHz.',
long_description=open('README.md').read(),
install_requires=['numpy', 'scipy', 'progressbar'],
scripts=['bin/coverage.py']
)
