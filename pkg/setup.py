from setuptools import setup, find_namespace_packages

setup(
    name="descentlink",
    version="0.1.0",
    packages=find_namespace_packages(include=["src", "src.*"]),
    python_requires=">=3.9",
    install_requires=[
        "numpy",
        "scipy",
        "matplotlib",
        "psutil",
        "termcolor",
    ],
    extras_require={
        "oracle": ["cvxpy"],
    },
    entry_points={
        "console_scripts": ["descentlink=src.main:main"],
    },
    description="descentlink - descent-phase air-to-ground offload planner",
    author="descentlink developers",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering",
    ],
)
