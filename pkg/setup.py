from setuptools import setup, find_packages

setup(
    name="qehrhart",
    version="0.1.0",
    description="Bigraded q-analogues of Ehrhart series with exact linear algebra",
    packages=find_packages(exclude=["test", "test.*"]),
    python_requires=">=3.8",
    install_requires=[],
    entry_points={"console_scripts": ["qehrhart=qehrhart._cli:main"]},
)
