# Utilities package