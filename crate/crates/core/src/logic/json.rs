//! JSON serialization of tables, formulas, terms and clauses.
//!
//! Variables serialize as named state lists; literals as
//! `{"var": name, "states": [names]}`; formulas as nested
//! `{"and": [...]}` / `{"or": [...]}` objects with `{"const": bool}`
//! leaves. `{"not": ...}` is accepted on input and compiled away.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::logic::circuit::{NnfArena, Node, NodeId};
use crate::logic::literal::Literal;
use crate::logic::table::{VarId, VarTable};
use crate::logic::term::{Clause, Term};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VariableSchema {
    pub name: String,
    pub states: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intervals: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableSchema {
    pub variables: Vec<VariableSchema>,
}

pub fn table_to_schema(table: &VarTable) -> TableSchema {
    TableSchema {
        variables: table
            .var_ids()
            .map(|v| {
                let var = table.variable(v);
                VariableSchema {
                    name: var.name.clone(),
                    states: var.states.clone(),
                    intervals: var.intervals.clone(),
                }
            })
            .collect(),
    }
}

pub fn table_from_schema(schema: &TableSchema) -> Result<VarTable> {
    let mut table = VarTable::new();
    for v in &schema.variables {
        let id = table.add_var(v.name.clone(), v.states.clone())?;
        if let Some(intervals) = &v.intervals {
            table.set_intervals(id, intervals.clone())?;
        }
    }
    Ok(table)
}

pub fn literal_to_json(table: &VarTable, lit: &Literal) -> Value {
    let states: Vec<&str> = lit
        .states
        .iter()
        .map(|s| table.state_name(lit.var, s))
        .collect();
    json!({ "var": table.name(lit.var), "states": states })
}

pub fn literal_from_json(table: &VarTable, value: &Value) -> Result<Literal> {
    let var = value
        .get("var")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Schema("literal needs a `var` string".into()))?;
    let states = value
        .get("states")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("literal needs a `states` array".into()))?;
    let names: Vec<&str> = states
        .iter()
        .map(|s| {
            s.as_str()
                .ok_or_else(|| Error::Schema("state names must be strings".into()))
        })
        .collect::<Result<_>>()?;
    Literal::from_names(table, var, &names)
}

pub fn term_to_json(table: &VarTable, term: &Term) -> Value {
    Value::Array(term.literals().map(|l| literal_to_json(table, &l)).collect())
}

pub fn term_from_json(table: &VarTable, value: &Value) -> Result<Term> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Schema("term must be an array of literals".into()))?;
    let lits: Vec<Literal> = arr
        .iter()
        .map(|l| literal_from_json(table, l))
        .collect::<Result<_>>()?;
    Term::from_literals(table, lits)
        .ok_or_else(|| Error::Schema("term literals are inconsistent".into()))
}

pub fn clause_to_json(table: &VarTable, clause: &Clause) -> Value {
    Value::Array(
        clause
            .literals()
            .map(|l| literal_to_json(table, &l))
            .collect(),
    )
}

pub fn clause_from_json(table: &VarTable, value: &Value) -> Result<Clause> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Schema("clause must be an array of literals".into()))?;
    let lits: Vec<Literal> = arr
        .iter()
        .map(|l| literal_from_json(table, l))
        .collect::<Result<_>>()?;
    Clause::from_literals(table, lits)
        .ok_or_else(|| Error::Schema("clause literals cover a full domain".into()))
}

pub fn formula_to_json(arena: &NnfArena, root: NodeId) -> Value {
    match arena.node(root) {
        Node::True => json!({ "const": true }),
        Node::False => json!({ "const": false }),
        Node::Lit(l) => literal_to_json(arena.table(), l),
        Node::And(cs) => {
            let children: Vec<Value> = cs.iter().map(|c| formula_to_json(arena, *c)).collect();
            json!({ "and": children })
        }
        Node::Or(cs) => {
            let children: Vec<Value> = cs.iter().map(|c| formula_to_json(arena, *c)).collect();
            json!({ "or": children })
        }
    }
}

pub fn formula_from_json(arena: &mut NnfArena, value: &Value) -> Result<NodeId> {
    if let Some(c) = value.get("const") {
        return match c.as_bool() {
            Some(true) => Ok(arena.tru()),
            Some(false) => Ok(arena.fls()),
            None => Err(Error::Schema("`const` must be a boolean".into())),
        };
    }
    if value.get("var").is_some() {
        let lit = literal_from_json(arena.table(), value)?;
        return arena.lit(lit);
    }
    if let Some(children) = value.get("and") {
        let ids = formula_children(arena, children)?;
        return Ok(arena.and(ids));
    }
    if let Some(children) = value.get("or") {
        let ids = formula_children(arena, children)?;
        return Ok(arena.or(ids));
    }
    if let Some(inner) = value.get("not") {
        let id = formula_from_json(arena, inner)?;
        return Ok(arena.negate(id));
    }
    Err(Error::Schema(format!(
        "unrecognized formula node: {value}"
    )))
}

fn formula_children(arena: &mut NnfArena, value: &Value) -> Result<Vec<NodeId>> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Schema("connective children must be an array".into()))?;
    arr.iter().map(|v| formula_from_json(arena, v)).collect()
}

/// Renders a variable's id back to its schema name; handy for reports.
pub fn var_name(table: &VarTable, var: VarId) -> &str {
    table.name(var)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> VarTable {
        let mut t = VarTable::new();
        t.add_var("X", ["x1", "x2", "x3"]).unwrap();
        t.add_var("Y", ["y1", "y2"]).unwrap();
        t
    }

    #[test]
    fn formula_round_trip() {
        let mut arena = NnfArena::new(table());
        let x12 = arena.lit_names("X", &["x1", "x2"]).unwrap();
        let y1 = arena.lit_names("Y", &["y1"]).unwrap();
        let f = arena.and([x12, y1]);
        let j = formula_to_json(&arena, f);
        let g = formula_from_json(&mut arena, &j).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn not_is_compiled_away() {
        let mut arena = NnfArena::new(table());
        let j = json!({ "not": { "var": "X", "states": ["x1"] } });
        let f = formula_from_json(&mut arena, &j).unwrap();
        let x23 = arena.lit_names("X", &["x2", "x3"]).unwrap();
        assert_eq!(f, x23);
    }

    #[test]
    fn table_round_trip() {
        let t = table();
        let schema = table_to_schema(&t);
        let text = serde_json::to_string(&schema).unwrap();
        let parsed: TableSchema = serde_json::from_str(&text).unwrap();
        assert_eq!(table_from_schema(&parsed).unwrap(), t);
    }

    #[test]
    fn term_and_clause_round_trip() {
        let t = table();
        let lits = [
            Literal::from_names(&t, "X", &["x1", "x3"]).unwrap(),
            Literal::from_names(&t, "Y", &["y2"]).unwrap(),
        ];
        let term = Term::from_literals(&t, lits).unwrap();
        let back = term_from_json(&t, &term_to_json(&t, &term)).unwrap();
        assert_eq!(back, term);
        let clause = Clause::from_literals(&t, lits).unwrap();
        let back = clause_from_json(&t, &clause_to_json(&t, &clause)).unwrap();
        assert_eq!(back, clause);
    }

    #[test]
    fn interval_metadata_drives_rendering_only() {
        let mut t = VarTable::new();
        let bmi = t
            .add_var("BMI", ["low", "mid", "high"])
            .unwrap();
        t.set_intervals(
            bmi,
            vec!["[0,25)".into(), "[25,30)".into(), "[30,inf)".into()],
        )
        .unwrap();
        let lit = Literal::from_names(&t, "BMI", &["mid", "high"]).unwrap();
        assert_eq!(lit.render(&t), "BMI ∈ {[25,30), [30,inf)}");
        // serialization still uses the state names
        let j = literal_to_json(&t, &lit);
        assert_eq!(j["states"][0], "mid");
        assert_eq!(literal_from_json(&t, &j).unwrap(), lit);
    }
}
