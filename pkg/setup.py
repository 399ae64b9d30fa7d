from setuptools import setup, find_packages
import os.path

# Get the long description from the relevant file
__here__ = os.path.dirname(os.path.realpath(__file__))
with open(os.path.join(__here__, 'README.rst'), 'r') as f:
    long_description = f.read()

about = {}
with open(os.path.join(__here__, 'linkcomm', '__version__.py'), 'r') as f:
    exec(f.read(), about)

setup(
    name=about['__title__'],
    version=about['__version__'],

    description=about['__description__'],
    long_description=long_description,

    license='MIT',

    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Developers',
        'Intended Audience :: Science/Research',
        'Topic :: Software Development :: Libraries :: Python Modules',
        'Topic :: Scientific/Engineering :: Information Analysis',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Natural Language :: English',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
    ],

    keywords=['community detection', 'link communities', 'random walk', 'networks'],

    packages=find_packages(exclude=['tests', 'examples', 'examples.*']),

    python_requires='>=3.8',

    install_requires=[
        'numpy >= 1.20',
        'scipy >= 1.7',
        'scikit-learn >= 0.24',
        'tablib >= 1.0.0',
    ],

    extras_require={
        'test': [
            'pytest',
            'hypothesis >= 6.0',
            'networkx >= 2.5',
        ],
    },

    entry_points={
        'console_scripts': [
            'linkcomm=linkcomm.script:main',
        ],
    },
)
