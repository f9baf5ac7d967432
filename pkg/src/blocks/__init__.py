# Levi blocks, Grothendieck-group calculus and section counting
