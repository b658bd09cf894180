# Parameter types, errors, result objects, units and file validation
