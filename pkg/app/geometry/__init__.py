"""
Root systems, parabolics, Weyl groups, cones, twisted frames and (G,M)-families
"""
