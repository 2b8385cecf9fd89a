import java.util.Map;

/** Renders {@code {{key}}} placeholders from a map, escaping HTML. */
public class TemplateEngine {

    private final Map<String, String> values;
    private final boolean escapeHtml;

    public TemplateEngine(Map<String, String> values, boolean escapeHtml) {
        this.values = values;
        this.escapeHtml = escapeHtml;
    }

    public String render(String template) {
        StringBuilder output = new StringBuilder();
        int cursor = 0;
        while (cursor < template.length()) {
            int open = template.indexOf("{{", cursor);
            if (open < 0) {
                output.append(template, cursor, template.length());
                break;
            }
            int close = template.indexOf("}}", open + 2);
            if (close < 0) {
                output.append(template, cursor, template.length());
                break;
            }
            output.append(template, cursor, open);
            String key = template.substring(open + 2, close).trim();
            String replacement = values.getOrDefault(key, "");
            if (escapeHtml) {
                replacement = replacement.replace("&", "&amp;");
                replacement = replacement.replace("<", "&lt;");
                replacement = replacement.replace(">", "&gt;");
                replacement = replacement.replace("\"", "&quot;");
            }
            output.append(replacement);
            cursor = close + 2;
        }
        return output.toString();
    }

    boolean hasPlaceholder(String template, String key) {
        return template.contains("{{" + key + "}}");
    }
}
