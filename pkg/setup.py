#!/usr/bin/env python
""" Setuptools shim; metadata lives in setup.cfg."""

import setuptools

if __name__ == "__main__":
    setuptools.setup()
