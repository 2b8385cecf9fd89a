import java.util.ArrayList;
import java.util.List;

/** Minimal RFC-4180 style record splitter with quoted-field support. */
public class CsvParser {

    private final char separator;

    public CsvParser(char separator) {
        this.separator = separator;
    }

    /**
     * Splits one physical line into fields, honoring double quotes and
     * doubled-quote escapes inside quoted fields.
     */
    public List<String> parseRecord(String line) {
        List<String> fields = new ArrayList<>();
        StringBuilder current = new StringBuilder();
        boolean quoted = false;
        int i = 0;
        while (i < line.length()) {
            char ch = line.charAt(i);
            if (quoted) {
                if (ch == '"' && i + 1 < line.length() && line.charAt(i + 1) == '"') {
                    current.append('"');
                    i += 2;
                    continue;
                }
                if (ch == '"') {
                    quoted = false;
                    i++;
                    continue;
                }
                current.append(ch);
                i++;
                continue;
            }
            if (ch == '"') {
                quoted = true;
                i++;
                continue;
            }
            if (ch == separator) {
                fields.add(current.toString());
                current.setLength(0);
                i++;
                continue;
            }
            current.append(ch);
            i++;
        }
        fields.add(current.toString());
        return fields;
    }

    boolean needsQuoting(String field) {
        if (field.indexOf(separator) >= 0) {
            return true;
        }
        return field.indexOf('"') >= 0 || field.indexOf('\n') >= 0;
    }
}
