#!/usr/bin/env python
from setuptools import setup, find_packages

setup_info = dict(
  name='pqc-randomness',
  python_requires=">=3.8",
  version='0.1.0',
  description='Expressibility, entanglement and t-design deviation of parameterized quantum circuits',
  packages=find_packages(
    where='.',
    include=['pqc_randomness*']
  ),
  install_requires=['numpy>=1.20', 'scipy>=1.6', 'pandas>=1.2'],
  setup_requires=[],
  tests_require=['pytest'],
  entry_points={
    'console_scripts': ['pqc-randomness = pqc_randomness.cli:main']
  }
)

setup(**setup_info)
