from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "arrowlab._core",
    [
        "bindings/module.cpp",
        "src/core.cpp",
        "src/constraints.cpp",
        "src/engine.cpp",
        "src/search.cpp",
        "src/trace.cpp",
        "src/checker.cpp",
        "src/cnf.cpp",
        "src/dpll.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
