# Reduced words, tilting characters and tilting tables
