#!/usr/bin/env python
# -*- coding: utf-8 -*-

def main():
    from setuptools import setup, find_packages

    version_dict = {}
    init_filename = "lqhv/version.py"
    exec(compile(open(init_filename, "r").read(), init_filename, "exec"),
            version_dict)

    setup(name="lqhv",
          version=version_dict["VERSION_TEXT"],
          description="Signed local quasi hidden variable models and "
          "Bell violation bounds",
          long_description=open("README.rst", "rt").read(),
          author="The lqhv developers",
          license="MIT",
          classifiers=[
              "Development Status :: 3 - Alpha",
              "Intended Audience :: Science/Research",
              "License :: OSI Approved :: MIT License",
              "Natural Language :: English",
              "Programming Language :: Python",
              "Programming Language :: Python :: 3",
              "Topic :: Scientific/Engineering",
              "Topic :: Scientific/Engineering :: Mathematics",
              "Topic :: Scientific/Engineering :: Physics",
              ],

          packages=find_packages(exclude=["test"]),
          python_requires="~=3.8",
          install_requires=[
              "numpy>=1.17",
              "pytools>=2022.1",
              "pymbolic>=2022.1",
              "pytest>=2.3",
              "mako",
              ],
          entry_points={
              "console_scripts": [
                  "lqhv = lqhv.cli:main",
                  ],
              },
          )


if __name__ == "__main__":
    main()
