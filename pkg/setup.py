import os

from setuptools import setup, find_packages

jcarray_root = os.path.abspath(os.path.dirname(__file__))
with open(os.path.join(jcarray_root, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

# Read the version without importing the package
version = {}
with open(os.path.join(jcarray_root, "jcarray", "__init__.py"), encoding="utf-8") as f:
    for line in f:
        if line.startswith("__version__"):
            exec(line, version)
            break

optional_dependencies = {
    "mpi": ["mpi4py>=3.1.1"],
    "testing": ["testflo>=1.4.7"],
    "docs": ["sphinx", "sphinxcontrib-programoutput"],
}

# Add an optional dependency that concatenates all others
optional_dependencies["all"] = sorted(
    [
        dependency
        for dependencies in optional_dependencies.values()
        for dependency in dependencies
    ]
)

setup(
    name="jcarray",
    version=version["__version__"],
    description="Single-photon transport in waveguide-coupled Jaynes-Cummings arrays",
    long_description=long_description,
    long_description_content_type="text/markdown",
    python_requires=">=3.8",
    install_requires=["numpy", "scipy>=1.4.0"],
    extras_require=optional_dependencies,
    packages=find_packages(include=["jcarray*"]),
    entry_points={"console_scripts": ["jcarray=jcarray.cli:main"]},
)
