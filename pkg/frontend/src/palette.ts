import type { ColumnSpec, ObjectType } from './types.js';

const HIDDEN_NAMES = new Set(['Num', 'isCGP']);

/**
 * Columns the user may reference for the chosen object type: the common
 * ones plus the type-specific ones, never the other type's. Identifier
 * and type-flag columns and the target are not user inputs, so they are
 * excluded too.
 */
export function columnPalette(columns: ColumnSpec[], objectType: ObjectType): ColumnSpec[] {
  const typeSpecific = objectType === 'CogenerationPlant' ? 'cgp_only' : 'boiler_house_only';
  return columns.filter(
    (c) =>
      !HIDDEN_NAMES.has(c.name) &&
      !c.is_target &&
      (c.applicability === 'common' || c.applicability === typeSpecific),
  );
}

/** Groups a palette by schema category, preserving column order. */
export function paletteByCategory(palette: ColumnSpec[]): Map<string, ColumnSpec[]> {
  const groups = new Map<string, ColumnSpec[]>();
  for (const col of palette) {
    const bucket = groups.get(col.category);
    if (bucket) bucket.push(col);
    else groups.set(col.category, [col]);
  }
  return groups;
}
