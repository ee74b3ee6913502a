from setuptools import find_packages, setup

setup(
    name='hypoindex',
    packages=find_packages(exclude=['tests', 'scripts']),
    version='0.1.0',
    description='index computations for hypoelliptic operators on contact 3-manifolds',
    install_requires=[
        'numpy',
        'scipy',
        'click',
        'arpeggio',
        'sympy'
    ],
    setup_requires=['pytest-runner'],
    tests_require=['pytest', 'hypothesis'],
    test_suite='tests',
    entry_points={
        'console_scripts': ['hypoindex = hypoindex.cli:main'],
    },
)
