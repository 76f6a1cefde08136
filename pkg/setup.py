import os
import setuptools

# Utility function to read the README file.
# Used for the long_description.
def read(fname):
    return open(os.path.join(os.path.dirname(__file__), fname)).read()

# install locally via `pip install -e .[test]` (-> for development)

setuptools.setup(
    name = "ssnelab",
    version = "0.1.0",
    description = ("Quantitative rates for strongly nonexpansive maps: a modulus calculus, "
                   "rate bounds and a numerical verification lab."),
    license = "MIT",
    keywords = "nonexpansive maps, fixed points, rates of asymptotic regularity, proof mining",
    packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
    long_description=read('README.md'),
    long_description_content_type="text/markdown",
    include_package_data=True,
    package_data={
        "ssnelab": ["schema/*.json"],
    },
    python_requires=">=3.8",
    install_requires=[
        "pyyaml",
        "typing_extensions>=4.5.0,<5.0.0",
        "numpy>=1.22",
        "pandas>=1.5",
        "jsonschema>=4.0",
    ],
    extras_require={
        "test": ["pytest>=7.0"],
    },
    entry_points={
        "console_scripts": [
            "ssnelab=ssnelab.run:main",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
    ],
)
