//! Config files: a JSON object whose keys are flag names. Entries become
//! flags inserted right after the subcommand, skipping any flag already on
//! the command line.

use serde_json::Value;

fn flag_value(argv: &[String], flag: &str) -> Option<String> {
    let eq = format!("{flag}=");
    argv.iter().enumerate().find_map(|(i, a)| {
        if a == flag {
            argv.get(i + 1).cloned()
        } else {
            a.strip_prefix(&eq).map(str::to_string)
        }
    })
}

fn scalar(v: &Value) -> Result<String, String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(format!("unsupported config value {other}")),
    }
}

pub fn merge_config(argv: Vec<String>) -> Result<Vec<String>, String> {
    let Some(path) = flag_value(&argv, "--config") else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("reading {path}: {e}"))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("parsing {path}: {e}"))?;
    let Value::Object(map) = value else {
        return Err(format!("{path}: config must be a JSON object"));
    };

    let mut extra = Vec::new();
    for (key, v) in &map {
        let flag = format!("--{}", key.replace('_', "-"));
        if flag == "--config" {
            return Err("config files cannot nest --config".into());
        }
        let eq = format!("{flag}=");
        if argv.iter().any(|a| *a == flag || a.starts_with(&eq)) {
            continue;
        }
        match v {
            Value::Bool(true) => extra.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                for item in items {
                    extra.push(format!("{flag}={}", scalar(item)?));
                }
            }
            other => extra.push(format!("{flag}={}", scalar(other)?)),
        }
    }

    // the subcommand is the first token that is neither a flag nor a flag value
    let mut i = 1;
    while i < argv.len() {
        let a = &argv[i];
        if a == "--config" || a == "--workers" {
            i += 2;
        } else if a.starts_with("--") {
            i += 1;
        } else {
            break;
        }
    }
    if i >= argv.len() {
        return Err("a subcommand is required".into());
    }
    let mut out = argv[..=i].to_vec();
    out.extend(extra);
    out.extend_from_slice(&argv[i + 1..]);
    Ok(out)
}
