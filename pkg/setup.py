import pathlib

from setuptools import setup, find_packages

# The directory containing this file
HERE = pathlib.Path(__file__).parent

# The text of the README file
README = (HERE / "README.md").read_text()

setup(
    name='hybrid-varswap',
    version='0.1.0',
    description='Fair strikes of discretely sampled variance swaps under the Heston-CIR hybrid model, with a '
                'semi-closed-form pricer, a Monte Carlo reference and a batch command line front-end.',
    long_description=README,
    long_description_content_type='text/markdown',
    classifiers=[
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3',
        'Topic :: Office/Business :: Financial :: Investment'
    ],
    packages=find_packages(exclude=['tests']),
    install_requires=[
        'numpy>=1.17,<3',
        'torch>=1.8,<3',
        'tqdm>=4.36.1,<5'
    ],
    entry_points={
        'console_scripts': ['hybrid-varswap=hybrid_varswap.cli:main']
    },
    tests_require=['nose'],
    test_suite='nose.collector'
)
