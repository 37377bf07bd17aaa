import sys
from setuptools import setup

if sys.version_info.major < 3:
    sys.exit('Sorry, this library only supports Python 3')

VERSION = '0.1.0'

setup(
    name='fishprint',
    packages=['fishprint'],
    include_package_data=True,
    version=VERSION,
    description='Greedy targeted and general fingerprinting of sparse binary profile datasets',
    author='Stephen Brown (Little Fish Solutions LTD)',
    author_email='opensource@littlefish.solutions',
    keywords=['fingerprinting', 'anonymity', 'privacy', 'greedy', 'minimum key'],
    classifiers=[
        'License :: OSI Approved :: Apache Software License',
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3',
        'Topic :: Security'
    ],
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.17.0',
        'PyYAML>=5.3.1'
    ],
    extras_require={
        'test': [
            'pytest>=6.0.0'
        ],
    },
    entry_points={
        'console_scripts': [
            'fishprint=fishprint.cli:main'
        ],
    }
)
