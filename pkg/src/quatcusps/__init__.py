"""Exact arithmetic for quaternion algebras over Q and the cusp/cohomology counts of M_2(D)."""
