"""
bbckit
------

Black-box checking toolkit: learn Mealy-machine models of a simulated system under test,
model check every intermediate hypothesis against safety DFA specifications and compare
the bug finding cost against learn-then-check and standalone model-based testing.
"""

import re
import os

from setuptools import setup, find_packages


def __get_version():
    with open("bbckit/__init__.py") as package_init_file:
        return re.search(r'^__version__\s*=\s*[\'"]([^\'"]*)[\'"]', package_init_file.read(), re.MULTILINE).group(1)


requirements = [
    "cachetools",
    "click>=8.0",
    "funcparserlib>=1.0.0",
    "numpy>=1.22",
]


on_rtd = os.getenv('READTHEDOCS') == 'True'
if on_rtd:
    requirements.append('sphinxcontrib-napoleon')
    requirements.append('Pallets-Sphinx-Themes')

extra_requirements = {
    'docs': [
        'sphinx==1.8.3'
    ],
    'tests': [
        'pytest',
    ],
}


setup(
    name='bbckit',
    version=__get_version(),
    license='MIT',
    description='Black-box checking with active automata learning, model checking and runtime monitoring.',
    long_description=__doc__,
    packages=find_packages(exclude=("tests", "tests.*")),
    zip_safe=False,
    include_package_data=True,
    platforms='any',
    install_requires=requirements,
    extras_require=extra_requirements,
    entry_points={
        'console_scripts': [
            'bbckit = bbckit.cli:main',
        ],
    },
    classifiers=[
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'Intended Audience :: Developers',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Software Development :: Testing',
        'Topic :: Scientific/Engineering',
    ]
)
