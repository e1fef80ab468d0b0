"""Halfspace depth, floating bodies and affine surface area in the plane."""
