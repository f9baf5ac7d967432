# Root systems, affine Weyl groups and alcove geometry
